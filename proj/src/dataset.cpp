#include "ucpsvr/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ucpsvr/errors.hpp"
#include "ucpsvr/numfmt.hpp"

namespace ucpsvr {

namespace {

constexpr const char* kEffortHeader = "ucp,effort";
constexpr const char* kProjectHeader =
    "name,actors_simple,actors_average,actors_complex,"
    "uc_simple,uc_average,uc_complex,"
    "t1,t2,t3,t4,t5,t6,t7,t8,t9,t10,t11,t12,t13,"
    "f1,f2,f3,f4,f5,f6,f7,f8";

// Per-class representative transaction counts; each lands strictly inside
// one band of the use case weighting table.
constexpr int kSimpleTransactions = 2;
constexpr int kAverageTransactions = 5;
constexpr int kComplexTransactions = 9;

std::string trim(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    std::size_t last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        fields.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw IoError("cannot open " + path);
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(file, line)) {
        lines.push_back(line);
    }
    return lines;
}

double parse_field_double(const std::string& field, const std::string& column,
                          std::size_t line_number) {
    std::optional<double> value = parse_double(field);
    if (!value || !std::isfinite(*value)) {
        throw ValidationError("line " + std::to_string(line_number) +
                              ": column " + column + " has non-numeric value '" +
                              field + "'");
    }
    return *value;
}

int parse_field_count(const std::string& field, const std::string& column,
                      std::size_t line_number) {
    std::optional<long long> value = parse_integer(field);
    if (!value || *value < 0) {
        throw ValidationError("line " + std::to_string(line_number) +
                              ": column " + column +
                              " must be a non-negative integer, got '" + field +
                              "'");
    }
    return static_cast<int>(*value);
}

int parse_field_rating(const std::string& field, const std::string& column,
                       std::size_t line_number) {
    std::optional<long long> value = parse_integer(field);
    if (!value) {
        throw ValidationError("line " + std::to_string(line_number) +
                              ": column " + column +
                              " must be an integer rating, got '" + field + "'");
    }
    if (*value < 0 || *value > 5) {
        throw ValidationError("line " + std::to_string(line_number) +
                              ": column " + column + " rating " +
                              std::to_string(*value) + " is outside [0, 5]");
    }
    return static_cast<int>(*value);
}

}  // namespace

std::vector<FeatureVector> features_of(const LabeledDataset& data) {
    std::vector<FeatureVector> out;
    out.reserve(data.records.size());
    for (const LabeledRecord& r : data.records) out.push_back(r.feature);
    return out;
}

std::vector<double> efforts_of(const LabeledDataset& data) {
    std::vector<double> out;
    out.reserve(data.records.size());
    for (const LabeledRecord& r : data.records) out.push_back(r.effort);
    return out;
}

LabeledDataset scale_dataset(const LabeledDataset& data) {
    if (data.records.empty()) {
        throw ValidationError("cannot scale an empty dataset");
    }
    std::vector<double> features;
    features.reserve(data.records.size());
    for (const LabeledRecord& r : data.records) {
        if (r.feature.size() != 1) {
            throw ValidationError("scaling expects single-feature records");
        }
        features.push_back(r.feature[0]);
    }
    ScalingParams feature_scaling = scale_fit(features);
    ScalingParams target_scaling = scale_fit(efforts_of(data));

    LabeledDataset scaled;
    scaled.feature_scaling = feature_scaling;
    scaled.target_scaling = target_scaling;
    scaled.records.reserve(data.records.size());
    for (const LabeledRecord& r : data.records) {
        scaled.records.push_back({{scale_apply(feature_scaling, r.feature[0])},
                                  scale_apply(target_scaling, r.effort)});
    }
    return scaled;
}

LabeledDataset load_effort_dataset(const std::string& path) {
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) {
        throw ValidationError(path + " is empty");
    }
    if (trim(lines[0]) != kEffortHeader) {
        throw FormatError(path + ": expected header '" +
                          std::string(kEffortHeader) + "', got '" +
                          trim(lines[0]) + "'");
    }
    LabeledDataset data;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        std::vector<std::string> fields = split_csv(lines[i]);
        if (fields.size() != 2) {
            throw ValidationError("line " + std::to_string(i + 1) +
                                  ": expected 2 fields, got " +
                                  std::to_string(fields.size()));
        }
        double ucp = parse_field_double(fields[0], "ucp", i + 1);
        double effort = parse_field_double(fields[1], "effort", i + 1);
        if (effort <= 0.0) {
            throw ValidationError("line " + std::to_string(i + 1) +
                                  ": effort must be positive, got " +
                                  format_full(effort));
        }
        data.records.push_back({{ucp}, effort});
    }
    if (data.records.empty()) {
        throw ValidationError(path + " contains no data rows");
    }
    return data;
}

std::vector<ProjectDescriptor> load_projects(const std::string& path) {
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) {
        throw ValidationError(path + " is empty");
    }
    if (trim(lines[0]) != kProjectHeader) {
        throw FormatError(path + ": unexpected project header");
    }
    std::vector<ProjectDescriptor> projects;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        std::vector<std::string> fields = split_csv(lines[i]);
        if (fields.size() != 28) {
            throw ValidationError("line " + std::to_string(i + 1) +
                                  ": expected 28 fields, got " +
                                  std::to_string(fields.size()));
        }
        ProjectDescriptor project;
        project.name = fields[0];
        if (project.name.empty()) {
            throw ValidationError("line " + std::to_string(i + 1) +
                                  ": column name is empty");
        }

        int actors_simple = parse_field_count(fields[1], "actors_simple", i + 1);
        int actors_average =
            parse_field_count(fields[2], "actors_average", i + 1);
        int actors_complex =
            parse_field_count(fields[3], "actors_complex", i + 1);
        project.actors.insert(project.actors.end(), actors_simple,
                              ActorClass::Simple);
        project.actors.insert(project.actors.end(), actors_average,
                              ActorClass::Average);
        project.actors.insert(project.actors.end(), actors_complex,
                              ActorClass::Complex);

        int uc_simple = parse_field_count(fields[4], "uc_simple", i + 1);
        int uc_average = parse_field_count(fields[5], "uc_average", i + 1);
        int uc_complex = parse_field_count(fields[6], "uc_complex", i + 1);
        project.use_case_transactions.insert(
            project.use_case_transactions.end(), uc_simple,
            kSimpleTransactions);
        project.use_case_transactions.insert(
            project.use_case_transactions.end(), uc_average,
            kAverageTransactions);
        project.use_case_transactions.insert(
            project.use_case_transactions.end(), uc_complex,
            kComplexTransactions);

        for (int t = 0; t < 13; ++t) {
            project.technical.ratings[t] = parse_field_rating(
                fields[7 + t], "t" + std::to_string(t + 1), i + 1);
        }
        for (int f = 0; f < 8; ++f) {
            project.environmental.ratings[f] = parse_field_rating(
                fields[20 + f], "f" + std::to_string(f + 1), i + 1);
        }

        if (project.actors.empty()) {
            throw ValidationError("line " + std::to_string(i + 1) +
                                  ": project needs at least one actor");
        }
        if (project.use_case_transactions.empty()) {
            throw ValidationError("line " + std::to_string(i + 1) +
                                  ": project needs at least one use case");
        }
        projects.push_back(std::move(project));
    }
    if (projects.empty()) {
        throw ValidationError(path + " contains no data rows");
    }
    return projects;
}

}  // namespace ucpsvr
