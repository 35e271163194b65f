#pragma once

#include <vector>

#include "ucpsvr/kernels.hpp"

namespace ucpsvr {

struct SvrParams {
    double c = 1.0;
    double epsilon = 0.1;
    KernelSpec kernel;
    double tolerance = 1e-3;
    long long max_iterations = 10000000;
};

struct SvrModel {
    std::vector<FeatureVector> support_inputs;
    std::vector<double> dual_coefficients;
    double bias = 0.0;
    KernelSpec kernel;
    SvrParams params;
};

struct TrainDiagnostics {
    bool record_objective = false;
    long long iterations = 0;
    double final_violation = 0.0;
    std::vector<double> objective_trace;
};

SvrModel train(const std::vector<FeatureVector>& xs,
               const std::vector<double>& ys, const SvrParams& params,
               TrainDiagnostics* diagnostics = nullptr);

double predict(const SvrModel& model, const FeatureVector& x);

// Value of the maximized dual for coefficients beta over the given Gram
// matrix: -1/2 beta'K beta - epsilon*sum|beta_i| + y'beta.
double dual_objective(const std::vector<double>& beta,
                      const std::vector<double>& gram,
                      const std::vector<double>& ys, double epsilon);

// Maximum violation of the dual optimality conditions for the model on the
// data it was trained from: box feasibility, the equality constraint, and
// the gradient gap between the ascent and descent index sets.
double kkt_violation(const SvrModel& model,
                     const std::vector<FeatureVector>& xs,
                     const std::vector<double>& ys);

}  // namespace ucpsvr
