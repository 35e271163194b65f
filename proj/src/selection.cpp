#include "ucpsvr/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ucpsvr/errors.hpp"
#include "ucpsvr/numfmt.hpp"

namespace ucpsvr {

namespace {

void check_unit_interval(const LabeledDataset& data, const char* what) {
    for (const LabeledRecord& r : data.records) {
        for (double v : r.feature) {
            if (v < 0.0 || v > 1.0) {
                throw ValidationError(std::string(what) +
                                      " features must be scaled to [0, 1]");
            }
        }
        if (r.effort < 0.0 || r.effort > 1.0) {
            throw ValidationError(std::string(what) +
                                  " efforts must be scaled to [0, 1]");
        }
    }
}

struct FoldData {
    std::vector<FeatureVector> learn_features;
    std::vector<double> learn_targets;
    std::vector<FeatureVector> valid_features;
    std::vector<double> valid_targets;
};

std::vector<FoldData> build_folds(const LabeledDataset& train,
                                  const FoldAssignment& assignment) {
    std::vector<FoldData> folds(assignment.fold_count);
    for (std::size_t i = 0; i < train.records.size(); ++i) {
        const LabeledRecord& r = train.records[i];
        for (int j = 0; j < assignment.fold_count; ++j) {
            if (assignment.fold_index_of[i] == j) {
                folds[j].valid_features.push_back(r.feature);
                folds[j].valid_targets.push_back(r.effort);
            } else {
                folds[j].learn_features.push_back(r.feature);
                folds[j].learn_targets.push_back(r.effort);
            }
        }
    }
    return folds;
}

}  // namespace

HyperGrid default_grid() {
    HyperGrid grid;
    for (int e = -7; e <= 7; ++e) {
        grid.gamma_values.push_back(std::ldexp(1.0, e));
    }
    for (int e = 0; e <= 5; ++e) {
        grid.epsilon_values.push_back(static_cast<double>(e));
    }
    return grid;
}

const GridCell& GridSearchReport::cell(std::size_t gamma_index,
                                       std::size_t epsilon_index) const {
    return cells[gamma_index * epsilon_values.size() + epsilon_index];
}

const GridCell& GridSearchReport::best_cell() const {
    return cell(best_gamma_index, best_epsilon_index);
}

std::pair<LabeledDataset, LabeledDataset> split_test(const LabeledDataset& data,
                                                     int stride) {
    if (stride < 1) {
        throw ValidationError("stride must be positive");
    }
    if (data.records.size() < static_cast<std::size_t>(stride)) {
        throw ValidationError("dataset has " +
                              std::to_string(data.records.size()) +
                              " records, fewer than the stride " +
                              std::to_string(stride));
    }
    LabeledDataset train;
    LabeledDataset test;
    train.feature_scaling = data.feature_scaling;
    train.target_scaling = data.target_scaling;
    test.feature_scaling = data.feature_scaling;
    test.target_scaling = data.target_scaling;
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        if (i % static_cast<std::size_t>(stride) == 0) {
            test.records.push_back(data.records[i]);
        } else {
            train.records.push_back(data.records[i]);
        }
    }
    return {std::move(train), std::move(test)};
}

FoldAssignment kfold_partitions(const LabeledDataset& train, int k) {
    if (k < 1) {
        throw ValidationError("fold count must be positive");
    }
    if (train.records.size() < static_cast<std::size_t>(k)) {
        throw ValidationError("training set has " +
                              std::to_string(train.records.size()) +
                              " records, fewer than " + std::to_string(k) +
                              " folds");
    }
    FoldAssignment assignment;
    assignment.fold_count = k;
    assignment.fold_index_of.reserve(train.records.size());
    for (std::size_t i = 0; i < train.records.size(); ++i) {
        assignment.fold_index_of.push_back(static_cast<int>(i % k));
    }
    return assignment;
}

double derive_c(const std::vector<double>& train_targets) {
    if (train_targets.empty()) {
        throw ValidationError("cannot derive C from an empty target list");
    }
    auto [lo, hi] = std::minmax_element(train_targets.begin(),
                                        train_targets.end());
    double span = *hi - *lo;
    return span == 0.0 ? 1.0 : span;
}

GridSearchReport grid_search(const LabeledDataset& train, KernelFamily family,
                             const HyperGrid& grid, int k) {
    if (grid.gamma_values.empty() || grid.epsilon_values.empty()) {
        throw ValidationError("hyperparameter grid is empty");
    }
    check_unit_interval(train, "training");

    FoldAssignment assignment = kfold_partitions(train, k);
    std::vector<FoldData> folds = build_folds(train, assignment);

    GridSearchReport report;
    report.kernel = family;
    report.c_used = derive_c(efforts_of(train));
    report.gamma_values = grid.gamma_values;
    report.epsilon_values = grid.epsilon_values;
    report.cells.reserve(grid.gamma_values.size() *
                         grid.epsilon_values.size());

    for (double gamma : grid.gamma_values) {
        for (double epsilon : grid.epsilon_values) {
            GridCell cell;
            cell.gamma = gamma;
            cell.epsilon = epsilon;

            SvrParams params;
            params.c = report.c_used;
            params.epsilon = epsilon;
            params.kernel = KernelSpec{family, gamma, 0.0, 3};

            try {
                double error_sum = 0.0;
                for (const FoldData& fold : folds) {
                    SvrModel model = ucpsvr::train(fold.learn_features,
                                                   fold.learn_targets, params);
                    std::vector<double> predictions;
                    predictions.reserve(fold.valid_features.size());
                    for (const FeatureVector& x : fold.valid_features) {
                        predictions.push_back(predict(model, x));
                    }
                    error_sum += mse(fold.valid_targets, predictions);
                }
                cell.validation_error =
                    error_sum / static_cast<double>(folds.size());
            } catch (const ConvergenceError& e) {
                cell.failed = true;
                cell.validation_error =
                    std::numeric_limits<double>::quiet_NaN();
                report.warnings.push_back(
                    "gamma=" + format_compact4(gamma) +
                    " epsilon=" + format_compact4(epsilon) + ": " + e.what());
            } catch (const NumericError& e) {
                cell.failed = true;
                cell.validation_error =
                    std::numeric_limits<double>::quiet_NaN();
                report.warnings.push_back(
                    "gamma=" + format_compact4(gamma) +
                    " epsilon=" + format_compact4(epsilon) + ": " + e.what());
            }
            report.cells.push_back(cell);
        }
    }

    bool found = false;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < report.gamma_values.size(); ++g) {
        for (std::size_t e = 0; e < report.epsilon_values.size(); ++e) {
            const GridCell& cell = report.cell(g, e);
            if (cell.failed) continue;
            if (cell.validation_error < best) {
                best = cell.validation_error;
                report.best_gamma_index = g;
                report.best_epsilon_index = e;
                found = true;
            }
        }
    }
    if (!found) {
        throw ConvergenceError("every grid cell failed to converge", 0.0);
    }
    return report;
}

FinalizedModel select_and_finalize(const LabeledDataset& train,
                                   const LabeledDataset& test,
                                   const GridSearchReport& report) {
    const GridCell& best = report.best_cell();

    SvrParams params;
    params.c = report.c_used;
    params.epsilon = best.epsilon;
    params.kernel = KernelSpec{report.kernel, best.gamma, 0.0, 3};

    FinalizedModel out;
    out.model = ucpsvr::train(features_of(train), efforts_of(train), params);

    std::vector<double> train_predictions;
    train_predictions.reserve(train.records.size());
    for (const LabeledRecord& r : train.records) {
        train_predictions.push_back(predict(out.model, r.feature));
    }
    out.train_eval = evaluate(efforts_of(train), train_predictions);

    std::vector<double> test_predictions;
    test_predictions.reserve(test.records.size());
    for (const LabeledRecord& r : test.records) {
        test_predictions.push_back(predict(out.model, r.feature));
    }
    out.test_eval = evaluate(efforts_of(test), test_predictions);
    return out;
}

std::string render_grid_text(const GridSearchReport& report) {
    std::string out = "C = " + format_fixed(report.c_used, 4) + "  kernel = " +
                      kernel_name(report.kernel) + "\n";
    out += "gamma\\epsilon";
    for (double epsilon : report.epsilon_values) {
        out += "\t" + format_compact4(epsilon);
    }
    out += "\n";
    for (std::size_t g = 0; g < report.gamma_values.size(); ++g) {
        out += format_compact4(report.gamma_values[g]);
        for (std::size_t e = 0; e < report.epsilon_values.size(); ++e) {
            const GridCell& cell = report.cell(g, e);
            out += "\t";
            out += cell.failed ? "failed"
                               : format_fixed(cell.validation_error, 4);
            if (g == report.best_gamma_index && e == report.best_epsilon_index) {
                out += "*";
            }
        }
        out += "\n";
    }
    return out;
}

std::string render_grid_csv(const GridSearchReport& report) {
    std::string out = "gamma";
    for (double epsilon : report.epsilon_values) {
        out += ",epsilon_" + format_compact4(epsilon);
    }
    out += "\n";
    for (std::size_t g = 0; g < report.gamma_values.size(); ++g) {
        out += format_full(report.gamma_values[g]);
        for (std::size_t e = 0; e < report.epsilon_values.size(); ++e) {
            const GridCell& cell = report.cell(g, e);
            out += ",";
            out += cell.failed ? "failed" : format_full(cell.validation_error);
        }
        out += "\n";
    }
    return out;
}

}  // namespace ucpsvr
