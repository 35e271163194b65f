#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ucpsvr/dataset.hpp"
#include "ucpsvr/metrics.hpp"
#include "ucpsvr/svr.hpp"

namespace ucpsvr {

struct FoldAssignment {
    std::vector<int> fold_index_of;
    int fold_count = 0;
};

struct HyperGrid {
    std::vector<double> gamma_values;
    std::vector<double> epsilon_values;
};

// gamma = 2^-7 .. 2^7 (15 values), epsilon = 0 .. 5 (6 values).
HyperGrid default_grid();

struct GridCell {
    double gamma = 0.0;
    double epsilon = 0.0;
    double validation_error = 0.0;
    bool failed = false;
};

struct GridSearchReport {
    KernelFamily kernel = KernelFamily::Rbf;
    double c_used = 0.0;
    std::vector<double> gamma_values;
    std::vector<double> epsilon_values;
    std::vector<GridCell> cells;  // row-major, gamma index times epsilon index
    std::size_t best_gamma_index = 0;
    std::size_t best_epsilon_index = 0;
    std::vector<std::string> warnings;

    const GridCell& cell(std::size_t gamma_index,
                         std::size_t epsilon_index) const;
    const GridCell& best_cell() const;
};

std::pair<LabeledDataset, LabeledDataset> split_test(const LabeledDataset& data,
                                                     int stride = 5);

FoldAssignment kfold_partitions(const LabeledDataset& train, int k = 5);

double derive_c(const std::vector<double>& train_targets);

GridSearchReport grid_search(const LabeledDataset& train, KernelFamily family,
                             const HyperGrid& grid, int k = 5);

struct FinalizedModel {
    SvrModel model;
    EvaluationReport train_eval;
    EvaluationReport test_eval;
};

FinalizedModel select_and_finalize(const LabeledDataset& train,
                                   const LabeledDataset& test,
                                   const GridSearchReport& report);

std::string render_grid_text(const GridSearchReport& report);
std::string render_grid_csv(const GridSearchReport& report);

}  // namespace ucpsvr
