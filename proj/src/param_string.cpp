#include "ucpsvr/param_string.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "ucpsvr/errors.hpp"
#include "ucpsvr/numfmt.hpp"

namespace ucpsvr {

ParamString parse_param_string(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream stream(text);
    std::string token;
    while (stream >> token) tokens.push_back(token);

    int svm_type = 0;
    int kernel_code_value = 2;
    double c = 1.0;
    double gamma = 1.0;
    double epsilon = 0.1;

    for (std::size_t i = 0; i < tokens.size(); i += 2) {
        const std::string& flag = tokens[i];
        if (flag != "-s" && flag != "-t" && flag != "-c" && flag != "-g" &&
            flag != "-p") {
            throw ValidationError("unknown flag '" + flag +
                                  "' in parameter string");
        }
        if (i + 1 >= tokens.size()) {
            throw ValidationError("flag '" + flag + "' is missing its value");
        }
        const std::string& value_text = tokens[i + 1];
        std::optional<double> value = parse_double(value_text);
        if (!value || !std::isfinite(*value)) {
            throw ValidationError("flag '" + flag +
                                  "' has non-numeric value '" + value_text +
                                  "'");
        }
        if (flag == "-s" || flag == "-t") {
            std::optional<long long> integer = parse_integer(value_text);
            if (!integer) {
                throw ValidationError("flag '" + flag +
                                      "' requires an integer, got '" +
                                      value_text + "'");
            }
            if (flag == "-s") {
                svm_type = static_cast<int>(*integer);
            } else {
                kernel_code_value = static_cast<int>(*integer);
            }
        } else if (flag == "-c") {
            c = *value;
        } else if (flag == "-g") {
            gamma = *value;
        } else {
            epsilon = *value;
        }
    }

    if (svm_type != 3) {
        throw ValidationError(
            "flag '-s' must be 3 (epsilon regression), got " +
            std::to_string(svm_type));
    }
    if (kernel_code_value < 0 || kernel_code_value > 3) {
        throw ValidationError("flag '-t' must be 0, 1, 2 or 3, got " +
                              std::to_string(kernel_code_value));
    }
    if (!(c > 0.0)) {
        throw ValidationError("flag '-c' must be positive");
    }
    if (epsilon < 0.0) {
        throw ValidationError("flag '-p' must be non-negative");
    }

    ParamString out;
    out.svm_type = svm_type;
    out.kernel = kernel_family_from_code(kernel_code_value);
    out.c = c;
    out.gamma = gamma;
    out.epsilon = epsilon;
    out.raw = text;
    return out;
}

std::string render_param_string(const ParamString& params) {
    return "-s " + std::to_string(params.svm_type) + " -t " +
           std::to_string(kernel_code(params.kernel)) + " -c " +
           format_full(params.c) + " -g " + format_full(params.gamma) +
           " -p " + format_full(params.epsilon);
}

std::string render_param_string_rounded(const ParamString& params) {
    return "-s " + std::to_string(params.svm_type) + " -t " +
           std::to_string(kernel_code(params.kernel)) + " -c " +
           format_compact4(params.c) + " -g " + format_compact4(params.gamma) +
           " -p " + format_compact4(params.epsilon);
}

SvrParams to_svr_params(const ParamString& params) {
    SvrParams out;
    out.c = params.c;
    out.epsilon = params.epsilon;
    out.kernel = KernelSpec{params.kernel, params.gamma, 0.0, 3};
    return out;
}

}  // namespace ucpsvr
