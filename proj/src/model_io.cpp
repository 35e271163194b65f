#include "ucpsvr/model_io.hpp"

#include <fstream>
#include <sstream>

#include "ucpsvr/errors.hpp"
#include "ucpsvr/numfmt.hpp"

namespace ucpsvr {

namespace {

constexpr const char* kHeader = "ucpsvr-model v1";

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> words;
    std::istringstream stream(line);
    std::string word;
    while (stream >> word) words.push_back(word);
    return words;
}

class LineReader {
  public:
    explicit LineReader(const std::string& text) : stream_(text) {}

    std::string next() {
        std::string line;
        while (std::getline(stream_, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return line;
        }
        throw FormatError("model file ended unexpectedly");
    }

  private:
    std::istringstream stream_;
};

double expect_double(const std::vector<std::string>& words, std::size_t index,
                     const std::string& key) {
    if (index >= words.size()) {
        throw FormatError("model line '" + key + "' is missing a value");
    }
    std::optional<double> value = parse_double(words[index]);
    if (!value) {
        throw FormatError("model line '" + key + "' has non-numeric value '" +
                          words[index] + "'");
    }
    return *value;
}

long long expect_integer(const std::vector<std::string>& words,
                         std::size_t index, const std::string& key) {
    if (index >= words.size()) {
        throw FormatError("model line '" + key + "' is missing a value");
    }
    std::optional<long long> value = parse_integer(words[index]);
    if (!value) {
        throw FormatError("model line '" + key + "' has non-integer value '" +
                          words[index] + "'");
    }
    return *value;
}

}  // namespace

std::string serialize_model(const StoredModel& stored) {
    const SvrModel& model = stored.model;
    std::string out;
    out += kHeader;
    out += "\n";
    out += "kernel " + std::to_string(kernel_code(model.kernel.family)) + "\n";
    out += "gamma " + format_full(model.kernel.gamma) + "\n";
    out += "coef0 " + format_full(model.kernel.coef0) + "\n";
    out += "degree " + std::to_string(model.kernel.degree) + "\n";
    out += "c " + format_full(model.params.c) + "\n";
    out += "epsilon " + format_full(model.params.epsilon) + "\n";
    out += "tolerance " + format_full(model.params.tolerance) + "\n";
    out += "max_iterations " + std::to_string(model.params.max_iterations) +
           "\n";
    out += "bias " + format_full(model.bias) + "\n";
    if (stored.feature_scaling) {
        out += "feature_scaling " + format_full(stored.feature_scaling->min_value) +
               " " + format_full(stored.feature_scaling->max_value) + "\n";
    }
    if (stored.target_scaling) {
        out += "target_scaling " + format_full(stored.target_scaling->min_value) +
               " " + format_full(stored.target_scaling->max_value) + "\n";
    }
    std::size_t dim =
        model.support_inputs.empty() ? 0 : model.support_inputs.front().size();
    out += "support_vectors " + std::to_string(model.support_inputs.size()) +
           " " + std::to_string(dim) + "\n";
    for (std::size_t i = 0; i < model.support_inputs.size(); ++i) {
        out += format_full(model.dual_coefficients[i]);
        for (double component : model.support_inputs[i]) {
            out += " " + format_full(component);
        }
        out += "\n";
    }
    out += "end\n";
    return out;
}

StoredModel deserialize_model(const std::string& text) {
    LineReader reader(text);
    if (reader.next() != kHeader) {
        throw FormatError("unsupported model header, expected '" +
                          std::string(kHeader) + "'");
    }

    StoredModel stored;
    SvrModel& model = stored.model;
    std::size_t sv_count = 0;
    std::size_t sv_dim = 0;
    bool saw_support = false;

    while (!saw_support) {
        std::string line = reader.next();
        std::vector<std::string> words = split_words(line);
        if (words.empty()) {
            throw FormatError("model file contains a blank keyed line");
        }
        const std::string& key = words[0];
        if (key == "kernel") {
            model.kernel.family = kernel_family_from_code(
                static_cast<int>(expect_integer(words, 1, key)));
        } else if (key == "gamma") {
            model.kernel.gamma = expect_double(words, 1, key);
        } else if (key == "coef0") {
            model.kernel.coef0 = expect_double(words, 1, key);
        } else if (key == "degree") {
            model.kernel.degree =
                static_cast<int>(expect_integer(words, 1, key));
        } else if (key == "c") {
            model.params.c = expect_double(words, 1, key);
        } else if (key == "epsilon") {
            model.params.epsilon = expect_double(words, 1, key);
        } else if (key == "tolerance") {
            model.params.tolerance = expect_double(words, 1, key);
        } else if (key == "max_iterations") {
            model.params.max_iterations = expect_integer(words, 1, key);
        } else if (key == "bias") {
            model.bias = expect_double(words, 1, key);
        } else if (key == "feature_scaling") {
            stored.feature_scaling = ScalingParams{
                expect_double(words, 1, key), expect_double(words, 2, key)};
        } else if (key == "target_scaling") {
            stored.target_scaling = ScalingParams{
                expect_double(words, 1, key), expect_double(words, 2, key)};
        } else if (key == "support_vectors") {
            sv_count = static_cast<std::size_t>(expect_integer(words, 1, key));
            sv_dim = static_cast<std::size_t>(expect_integer(words, 2, key));
            saw_support = true;
        } else {
            throw FormatError("unknown model line '" + key + "'");
        }
    }

    for (std::size_t i = 0; i < sv_count; ++i) {
        std::vector<std::string> words = split_words(reader.next());
        if (words.size() != sv_dim + 1) {
            throw FormatError("support vector " + std::to_string(i + 1) +
                              " has " + std::to_string(words.size()) +
                              " fields, expected " +
                              std::to_string(sv_dim + 1));
        }
        model.dual_coefficients.push_back(
            expect_double(words, 0, "support vector"));
        FeatureVector input;
        input.reserve(sv_dim);
        for (std::size_t d = 0; d < sv_dim; ++d) {
            input.push_back(expect_double(words, d + 1, "support vector"));
        }
        model.support_inputs.push_back(std::move(input));
    }

    if (reader.next() != "end") {
        throw FormatError("model file is missing its end marker");
    }
    model.params.kernel = model.kernel;
    return stored;
}

void save_model(const std::string& path, const StoredModel& stored) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open " + path + " for writing");
    }
    file << serialize_model(stored);
    if (!file) {
        throw IoError("failed to write " + path);
    }
}

StoredModel load_model(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return deserialize_model(buffer.str());
}

}  // namespace ucpsvr
