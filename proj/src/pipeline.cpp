#include "ucpsvr/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "ucpsvr/errors.hpp"
#include "ucpsvr/numfmt.hpp"
#include "ucpsvr/param_string.hpp"

namespace ucpsvr {

namespace {

namespace fs = std::filesystem;

struct KernelRun {
    KernelFamily family;
    GridSearchReport report;
    FinalizedModel finalized;
};

std::string display_name(KernelFamily family) {
    switch (family) {
        case KernelFamily::Linear:
            return "Linear";
        case KernelFamily::Polynomial:
            return "Polynomial";
        case KernelFamily::Rbf:
            return "RBF";
        case KernelFamily::Sigmoid:
            return "Sigmoid";
    }
    return "Unknown";
}

std::string iso_utc_now() {
    std::time_t now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                  tm.tm_min, tm.tm_sec);
    return buffer;
}

std::string render_result_block(const KernelRun& run) {
    ParamString params;
    params.svm_type = 3;
    params.kernel = run.family;
    params.c = run.report.c_used;
    params.gamma = run.report.best_cell().gamma;
    params.epsilon = run.report.best_cell().epsilon;

    std::string out;
    out += "SVR " + display_name(run.family) + " Kernel Result for UCP:\n";
    out += "Param: " + render_param_string_rounded(params) + "\n";
    out += "* Mean Squared Error (MSE_TEST) = " +
           format_fixed(run.finalized.test_eval.mse, 4) + " (regression)\n";
    out += "* Squared correlation coefficient (TRAIN) = " +
           format_fixed(run.finalized.train_eval.r_squared, 4) +
           " (regression)\n";
    out += "* Squared correlation coefficient (TEST) = " +
           format_fixed(run.finalized.test_eval.r_squared, 4) +
           " (regression)\n";
    out += "* NRMS_Test = " + format_fixed(run.finalized.test_eval.nrms, 4) +
           "\n";
    return out;
}

std::string render_comparison(const LabeledDataset& scaled_test,
                              const LabeledDataset& raw_test,
                              const std::vector<KernelRun>& runs,
                              const ScalingParams& feature_scaling,
                              const ScalingParams& target_scaling,
                              int stride) {
    std::string out;
    out += "# feature_scaling_min=" + format_full(feature_scaling.min_value) +
           " feature_scaling_max=" + format_full(feature_scaling.max_value) +
           " target_scaling_min=" + format_full(target_scaling.min_value) +
           " target_scaling_max=" + format_full(target_scaling.max_value) +
           "\n";
    out += "position,actual_scaled";
    for (const KernelRun& run : runs) {
        out += "," + kernel_name(run.family) + "_scaled";
    }
    out += ",actual";
    for (const KernelRun& run : runs) {
        out += "," + kernel_name(run.family);
    }
    out += "\n";

    for (std::size_t i = 0; i < scaled_test.records.size(); ++i) {
        const LabeledRecord& record = scaled_test.records[i];
        std::vector<double> scaled_predictions;
        scaled_predictions.reserve(runs.size());
        for (const KernelRun& run : runs) {
            scaled_predictions.push_back(
                predict(run.finalized.model, record.feature));
        }
        out += std::to_string(1 + i * static_cast<std::size_t>(stride));
        out += "," + format_full(record.effort);
        for (double p : scaled_predictions) {
            out += "," + format_full(p);
        }
        out += "," + format_full(raw_test.records[i].effort);
        for (double p : scaled_predictions) {
            out += "," + format_full(scale_invert(target_scaling, p));
        }
        out += "\n";
    }
    return out;
}

std::string render_summary(const std::vector<KernelRun>& runs) {
    std::string out = "kernel,mmre,pred\n";
    for (const KernelRun& run : runs) {
        out += kernel_name(run.family) + "," +
               format_fixed(run.finalized.test_eval.mmre, 4) + "," +
               format_fixed(run.finalized.test_eval.pred, 4) + "\n";
    }
    return out;
}

std::string render_manifest_json(const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["dataset"] = manifest.dataset_path;
    j["kernels"] = manifest.kernels;
    j["grid"]["gamma"] = manifest.gamma_values;
    j["grid"]["epsilon"] = manifest.epsilon_values;
    j["deterministic"] = manifest.deterministic;
    j["output_dir"] = manifest.output_dir;
    j["started_at"] = manifest.started_at;
    j["finished_at"] = manifest.finished_at;
    j["best_kernel_by_mmre"] = manifest.best_kernel_by_mmre;
    j["artifacts"] = nlohmann::ordered_json::array();
    for (const ArtifactRecord& artifact : manifest.artifacts) {
        j["artifacts"].push_back(
            {{"name", artifact.name}, {"fnv1a64", artifact.checksum}});
    }
    return j.dump(2) + "\n";
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    file << content;
    if (!file) {
        throw IoError("failed to write " + path.string());
    }
}

std::string checksum_hex(const std::string& content) {
    char buffer[24];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(content)));
    return buffer;
}

// Re-raises any pipeline error with the failing stage's name prefixed,
// keeping the concrete error type so exit-code mapping still works.
template <typename Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(name + ": " + e.what(), e.final_violation());
    } catch (const NumericError& e) {
        throw NumericError(name + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(name + ": " + e.what());
    } catch (const FormatError& e) {
        throw FormatError(name + ": " + e.what());
    } catch (const IoError& e) {
        throw IoError(name + ": " + e.what());
    }
}

}  // namespace

std::uint64_t fnv1a64(const std::string& content) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char byte : content) {
        hash ^= byte;
        hash *= 1099511628211ULL;
    }
    return hash;
}

RunManifest run_full_pipeline(const std::string& dataset_path,
                              const std::vector<KernelFamily>& families,
                              const HyperGrid& grid,
                              const std::string& output_dir) {
    if (families.empty()) {
        throw ValidationError("no kernel families requested");
    }
    constexpr int kStride = 5;
    constexpr int kFolds = 5;

    RunManifest manifest;
    manifest.dataset_path = dataset_path;
    manifest.gamma_values = grid.gamma_values;
    manifest.epsilon_values = grid.epsilon_values;
    manifest.output_dir = output_dir;
    manifest.started_at = iso_utc_now();
    for (KernelFamily family : families) {
        manifest.kernels.push_back(kernel_name(family));
    }

    LabeledDataset raw = stage("loading dataset", [&] {
        return load_effort_dataset(dataset_path);
    });
    LabeledDataset scaled =
        stage("scaling", [&] { return scale_dataset(raw); });
    auto [train_set, test_set] =
        stage("splitting", [&] { return split_test(scaled, kStride); });
    auto [raw_train, raw_test] =
        stage("splitting", [&] { return split_test(raw, kStride); });

    std::vector<KernelRun> runs;
    runs.reserve(families.size());
    for (KernelFamily family : families) {
        KernelRun run;
        run.family = family;
        run.report = stage("grid search (" + kernel_name(family) + ")", [&] {
            return grid_search(train_set, family, grid, kFolds);
        });
        run.finalized =
            stage("finalizing (" + kernel_name(family) + ")", [&] {
                return select_and_finalize(train_set, test_set, run.report);
            });
        runs.push_back(std::move(run));
    }

    double best_mmre = std::numeric_limits<double>::infinity();
    for (const KernelRun& run : runs) {
        if (run.finalized.test_eval.mmre < best_mmre) {
            best_mmre = run.finalized.test_eval.mmre;
            manifest.best_kernel_by_mmre = kernel_name(run.family);
        }
    }

    std::vector<std::pair<std::string, std::string>> files;
    for (const KernelRun& run : runs) {
        std::string name = kernel_name(run.family);
        files.emplace_back("validation_grid_" + name + ".csv",
                           render_grid_csv(run.report));
        files.emplace_back("result_block_" + name + ".txt",
                           render_result_block(run));
        StoredModel stored{run.finalized.model, scaled.feature_scaling,
                           scaled.target_scaling};
        files.emplace_back("model_" + name + ".model",
                           serialize_model(stored));
    }
    files.emplace_back("comparison.csv",
                       render_comparison(test_set, raw_test, runs,
                                         *scaled.feature_scaling,
                                         *scaled.target_scaling, kStride));
    files.emplace_back("summary.csv", render_summary(runs));

    for (const auto& [name, content] : files) {
        manifest.artifacts.push_back({name, checksum_hex(content)});
    }
    manifest.finished_at = iso_utc_now();
    files.emplace_back("manifest.json", render_manifest_json(manifest));

    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + output_dir + ": " +
                      ec.message());
    }
    std::vector<fs::path> written;
    try {
        stage("writing artifacts", [&] {
            for (const auto& [name, content] : files) {
                fs::path path = fs::path(output_dir) / name;
                write_file(path, content);
                written.push_back(path);
            }
        });
    } catch (...) {
        for (const fs::path& path : written) {
            fs::remove(path, ec);
        }
        throw;
    }
    return manifest;
}

EffortPrediction predict_effort(const StoredModel& stored, double ucp_value) {
    EffortPrediction out;
    out.ucp = ucp_value;
    double input = ucp_value;
    if (stored.feature_scaling) {
        input = scale_apply(*stored.feature_scaling, ucp_value);
        out.extrapolated = ucp_value < stored.feature_scaling->min_value ||
                           ucp_value > stored.feature_scaling->max_value;
    }
    out.scaled_input = input;
    out.scaled_prediction = predict(stored.model, FeatureVector{input});
    out.effort = stored.target_scaling
                     ? scale_invert(*stored.target_scaling,
                                    out.scaled_prediction)
                     : out.scaled_prediction;
    return out;
}

EffortPrediction predict_effort(const std::string& model_path,
                                double ucp_value) {
    return predict_effort(load_model(model_path), ucp_value);
}

EffortPrediction predict_effort(const std::string& model_path,
                                const ProjectDescriptor& project) {
    return predict_effort(load_model(model_path), compute_ucp(project).ucp);
}

}  // namespace ucpsvr
