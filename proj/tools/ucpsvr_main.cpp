#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ucpsvr/dataset.hpp"
#include "ucpsvr/errors.hpp"
#include "ucpsvr/metrics.hpp"
#include "ucpsvr/model_io.hpp"
#include "ucpsvr/numfmt.hpp"
#include "ucpsvr/param_string.hpp"
#include "ucpsvr/pipeline.hpp"
#include "ucpsvr/selection.hpp"
#include "ucpsvr/svr.hpp"
#include "ucpsvr/ucp.hpp"

namespace {

using namespace ucpsvr;

std::vector<KernelFamily> parse_families(const std::string& text) {
    if (text == "all") {
        return {KernelFamily::Linear, KernelFamily::Polynomial,
                KernelFamily::Rbf, KernelFamily::Sigmoid};
    }
    if (text == "linear") return {KernelFamily::Linear};
    if (text == "poly") return {KernelFamily::Polynomial};
    if (text == "rbf") return {KernelFamily::Rbf};
    if (text == "sigmoid") return {KernelFamily::Sigmoid};
    throw ValidationError("unknown kernel '" + text +
                          "', expected linear, poly, rbf, sigmoid or all");
}

std::vector<double> parse_value_list(const std::string& text,
                                     const std::string& flag) {
    std::vector<double> values;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        std::optional<double> value = parse_double(item);
        if (!value) {
            throw ValidationError(flag + ": non-numeric value '" + item + "'");
        }
        values.push_back(*value);
    }
    if (values.empty()) {
        throw ValidationError(flag + ": empty value list");
    }
    return values;
}

void print_breakdown(const ProjectDescriptor& project) {
    UcpBreakdown b = compute_ucp(project);
    std::cout << project.name << ":\n";
    std::cout << "  UAW      " << format_compact4(b.uaw) << "\n";
    std::cout << "  UUCW     " << format_compact4(b.uucw) << "\n";
    std::cout << "  UUCP     " << format_compact4(b.uucp) << "\n";
    std::cout << "  TFactor  " << format_compact4(b.tfactor) << "\n";
    std::cout << "  TCF      " << format_compact4(b.tcf) << "\n";
    std::cout << "  EFactor  " << format_compact4(b.efactor) << "\n";
    std::cout << "  EF       " << format_compact4(b.ef) << "\n";
    std::cout << "  UCP      " << format_full(b.ucp) << "\n";
}

int run_ucp(const std::string& projects_path) {
    for (const ProjectDescriptor& project : load_projects(projects_path)) {
        print_breakdown(project);
    }
    return 0;
}

int run_train(const std::string& data_path, const std::string& param_text,
              const std::string& out_path) {
    ParamString params = parse_param_string(param_text);
    LabeledDataset scaled = scale_dataset(load_effort_dataset(data_path));
    SvrModel model = train(features_of(scaled), efforts_of(scaled),
                           to_svr_params(params));
    StoredModel stored{model, scaled.feature_scaling, scaled.target_scaling};
    save_model(out_path, stored);
    std::cout << "trained " << kernel_name(params.kernel) << " model: "
              << model.support_inputs.size() << " support vectors, bias "
              << format_full(model.bias) << "\n";
    std::cout << "saved " << out_path << "\n";
    return 0;
}

int run_grid_search(const std::string& data_path, const std::string& kernel,
                    const HyperGrid& grid, const std::string& out_path) {
    std::vector<KernelFamily> families = parse_families(kernel);
    if (families.size() != 1) {
        throw ValidationError("grid-search expects a single kernel family");
    }
    LabeledDataset scaled = scale_dataset(load_effort_dataset(data_path));
    auto [train_set, test_set] = split_test(scaled, 5);
    GridSearchReport report = grid_search(train_set, families[0], grid, 5);
    std::cout << render_grid_text(report);
    for (const std::string& warning : report.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    if (!out_path.empty()) {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            throw IoError("cannot open " + out_path + " for writing");
        }
        file << render_grid_csv(report);
    }
    return 0;
}

int run_evaluate(const std::string& data_path, const std::string& model_path) {
    StoredModel stored = load_model(model_path);
    LabeledDataset data = load_effort_dataset(data_path);
    std::vector<double> actual;
    std::vector<double> predicted;
    for (const LabeledRecord& record : data.records) {
        double input = stored.feature_scaling
                           ? scale_apply(*stored.feature_scaling,
                                         record.feature[0])
                           : record.feature[0];
        double target = stored.target_scaling
                            ? scale_apply(*stored.target_scaling, record.effort)
                            : record.effort;
        actual.push_back(target);
        predicted.push_back(predict(stored.model, FeatureVector{input}));
    }
    std::cout << render_report_text(evaluate(actual, predicted));
    return 0;
}

int run_predict(const std::string& model_path, double ucp_value, bool has_ucp,
                const std::string& projects_path) {
    if (has_ucp != projects_path.empty()) {
        // exactly one input source must be given
        if (has_ucp) {
            throw ValidationError("pass either --ucp or --projects, not both");
        }
        throw ValidationError("predict needs --ucp VALUE or --projects FILE");
    }
    StoredModel stored = load_model(model_path);
    if (has_ucp) {
        EffortPrediction p = predict_effort(stored, ucp_value);
        if (p.extrapolated) {
            std::cerr << "warning: UCP " << format_full(p.ucp)
                      << " lies outside the training range\n";
        }
        std::cout << "ucp " << format_full(p.ucp) << " -> effort "
                  << format_full(p.effort) << "\n";
        return 0;
    }
    for (const ProjectDescriptor& project : load_projects(projects_path)) {
        EffortPrediction p = predict_effort(stored, compute_ucp(project).ucp);
        if (p.extrapolated) {
            std::cerr << "warning: " << project.name << ": UCP "
                      << format_full(p.ucp)
                      << " lies outside the training range\n";
        }
        std::cout << project.name << ": ucp " << format_full(p.ucp)
                  << " -> effort " << format_full(p.effort) << "\n";
    }
    return 0;
}

int run_report(const std::string& data_path, const std::string& kernel,
               const HyperGrid& grid, const std::string& out_dir) {
    RunManifest manifest =
        run_full_pipeline(data_path, parse_families(kernel), grid, out_dir);
    for (const ArtifactRecord& artifact : manifest.artifacts) {
        std::cout << "wrote " << manifest.output_dir << "/" << artifact.name
                  << " (fnv1a64 " << artifact.checksum << ")\n";
    }
    std::cout << "wrote " << manifest.output_dir << "/manifest.json\n";
    std::cout << "best kernel by MMRE: " << manifest.best_kernel_by_mmre
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Use case point effort estimation with epsilon-SVR"};
    app.require_subcommand(1);

    std::string data_path;
    std::string projects_path;
    std::string model_path;
    std::string out_path;
    std::string param_text;
    std::string kernel = "rbf";
    std::string grid_gamma;
    std::string grid_epsilon;
    double ucp_value = 0.0;

    CLI::App* cmd_ucp = app.add_subcommand(
        "ucp", "Compute use case point breakdowns for a project file");
    cmd_ucp->add_option("--projects", projects_path, "project CSV")
        ->required();

    CLI::App* cmd_train = app.add_subcommand(
        "train", "Train one model with explicit parameters");
    cmd_train->add_option("--data", data_path, "ucp,effort CSV")->required();
    cmd_train->add_option("--param", param_text, "parameter string")
        ->required();
    cmd_train->add_option("--out", out_path, "model file to write")
        ->required();

    CLI::App* cmd_grid = app.add_subcommand(
        "grid-search", "Cross-validate the hyperparameter grid");
    cmd_grid->add_option("--data", data_path, "ucp,effort CSV")->required();
    cmd_grid->add_option("--kernel", kernel,
                         "linear, poly, rbf or sigmoid");
    cmd_grid->add_option("--grid-gamma", grid_gamma,
                         "comma separated gamma values");
    cmd_grid->add_option("--grid-epsilon", grid_epsilon,
                         "comma separated epsilon values");
    cmd_grid->add_option("--out", out_path, "grid CSV to write");

    CLI::App* cmd_eval = app.add_subcommand(
        "evaluate", "Evaluate a saved model on a dataset");
    cmd_eval->add_option("--data", data_path, "ucp,effort CSV")->required();
    cmd_eval->add_option("--model", model_path, "model file")->required();

    CLI::App* cmd_predict = app.add_subcommand(
        "predict", "Predict effort from a UCP value or project file");
    cmd_predict->add_option("--model", model_path, "model file")->required();
    CLI::Option* ucp_option =
        cmd_predict->add_option("--ucp", ucp_value, "raw UCP value");
    cmd_predict->add_option("--projects", projects_path, "project CSV");

    CLI::App* cmd_report = app.add_subcommand(
        "report", "Run the full pipeline and emit all artifacts");
    cmd_report->add_option("--data", data_path, "ucp,effort CSV")->required();
    cmd_report->add_option("--kernel", kernel,
                           "linear, poly, rbf, sigmoid or all");
    cmd_report->add_option("--grid-gamma", grid_gamma,
                           "comma separated gamma values");
    cmd_report->add_option("--grid-epsilon", grid_epsilon,
                           "comma separated epsilon values");
    cmd_report->add_option("--out", out_path, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        HyperGrid grid = ucpsvr::default_grid();
        if (!grid_gamma.empty()) {
            grid.gamma_values = parse_value_list(grid_gamma, "--grid-gamma");
        }
        if (!grid_epsilon.empty()) {
            grid.epsilon_values =
                parse_value_list(grid_epsilon, "--grid-epsilon");
        }

        if (cmd_ucp->parsed()) return run_ucp(projects_path);
        if (cmd_train->parsed()) {
            return run_train(data_path, param_text, out_path);
        }
        if (cmd_grid->parsed()) {
            return run_grid_search(data_path, kernel, grid, out_path);
        }
        if (cmd_eval->parsed()) return run_evaluate(data_path, model_path);
        if (cmd_predict->parsed()) {
            return run_predict(model_path, ucp_value,
                               ucp_option->count() > 0, projects_path);
        }
        if (cmd_report->parsed()) {
            return run_report(data_path, kernel, grid, out_path);
        }
        return 1;
    } catch (const ucpsvr::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ucpsvr::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ucpsvr::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ucpsvr::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ucpsvr::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
