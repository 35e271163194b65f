#include "ucpsvr/svr.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ucpsvr/errors.hpp"
#include "ucpsvr/numfmt.hpp"

// The dual of the epsilon-SVR problem is solved over two coefficient banks,
// a_up (alpha) and a_dn (alpha*), both boxed to [0, C], with the equality
// constraint sum(a_up) - sum(a_dn) = 0. The regression coefficients are
// beta_i = a_up[i] - a_dn[i]. Each step picks the maximal-violating pair of
// bank entries (most positive ascent candidate vs most negative descent
// candidate), moves both by one exactly-solved step, and updates the cached
// gradient G_i = (K beta)_i - y_i.

namespace ucpsvr {

namespace {

constexpr double kEtaFloor = 1e-12;

// A working-set entry: data index plus which bank it lives in.
struct Entry {
    int index = -1;
    bool upper = true;
};

void validate_params(const SvrParams& params) {
    if (!(params.c > 0.0) || !std::isfinite(params.c)) {
        throw ValidationError("C must be positive and finite");
    }
    if (params.epsilon < 0.0 || !std::isfinite(params.epsilon)) {
        throw ValidationError("epsilon must be non-negative and finite");
    }
    if (!(params.tolerance > 0.0)) {
        throw ValidationError("tolerance must be positive");
    }
    if (params.max_iterations < 1) {
        throw ValidationError("max_iterations must be positive");
    }
    validate_kernel_spec(params.kernel);
}

void validate_data(const std::vector<FeatureVector>& xs,
                   const std::vector<double>& ys) {
    if (xs.empty()) {
        throw ValidationError("training data is empty");
    }
    if (xs.size() != ys.size()) {
        throw ValidationError("feature and target counts differ: " +
                              std::to_string(xs.size()) + " vs " +
                              std::to_string(ys.size()));
    }
    for (const FeatureVector& x : xs) {
        for (double v : x) {
            if (!std::isfinite(v)) {
                throw ValidationError("training features must be finite");
            }
        }
    }
    for (double y : ys) {
        if (!std::isfinite(y)) {
            throw ValidationError("training targets must be finite");
        }
    }
}

double mean(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

}  // namespace

SvrModel train(const std::vector<FeatureVector>& xs,
               const std::vector<double>& ys, const SvrParams& params,
               TrainDiagnostics* diagnostics) {
    validate_params(params);
    validate_data(xs, ys);

    const int n = static_cast<int>(xs.size());
    const double c = params.c;
    const double eps = params.epsilon;
    const std::vector<double> gram = gram_matrix(params.kernel, xs);

    std::vector<double> a_up(n, 0.0);
    std::vector<double> a_dn(n, 0.0);
    std::vector<double> grad(n, 0.0);
    for (int i = 0; i < n; ++i) grad[i] = -ys[i];

    std::vector<double> beta(n, 0.0);
    auto record_objective = [&]() {
        if (diagnostics != nullptr && diagnostics->record_objective) {
            for (int i = 0; i < n; ++i) beta[i] = a_up[i] - a_dn[i];
            diagnostics->objective_trace.push_back(
                dual_objective(beta, gram, ys, eps));
        }
    };
    record_objective();

    long long iterations = 0;
    double last_m = 0.0;
    double last_big_m = 0.0;
    while (true) {
        // Ascent candidates: entries whose beta contribution can increase.
        // Candidate value is -G_i - eps on the alpha bank, -G_i + eps on the
        // alpha* bank; at optimality all free candidates agree on the bias.
        double m = -std::numeric_limits<double>::infinity();
        Entry p;
        for (int i = 0; i < n; ++i) {
            if (a_up[i] < c) {
                double value = -grad[i] - eps;
                if (value > m) {
                    m = value;
                    p = {i, true};
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            if (a_dn[i] > 0.0) {
                double value = -grad[i] + eps;
                if (value > m) {
                    m = value;
                    p = {i, false};
                }
            }
        }

        double big_m = std::numeric_limits<double>::infinity();
        Entry q;
        for (int i = 0; i < n; ++i) {
            if (a_up[i] > 0.0) {
                double value = -grad[i] - eps;
                if (value < big_m) {
                    big_m = value;
                    q = {i, true};
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            if (a_dn[i] < c) {
                double value = -grad[i] + eps;
                if (value < big_m) {
                    big_m = value;
                    q = {i, false};
                }
            }
        }

        last_m = m;
        last_big_m = big_m;
        if (p.index < 0 || q.index < 0) break;
        double violation = m - big_m;
        if (violation <= params.tolerance) break;
        if (iterations >= params.max_iterations) {
            throw ConvergenceError(
                "solver stopped after " + std::to_string(iterations) +
                    " iterations with KKT violation " + format_full(violation),
                violation);
        }
        ++iterations;

        const int i = p.index;
        const int j = q.index;
        double eta = gram[i * n + i] + gram[j * n + j] - 2.0 * gram[i * n + j];
        if (eta < kEtaFloor) eta = kEtaFloor;

        double room_p = p.upper ? c - a_up[i] : a_dn[i];
        double room_q = q.upper ? a_up[j] : c - a_dn[j];
        double delta = std::min(violation / eta, std::min(room_p, room_q));

        if (p.upper) {
            a_up[i] = delta == room_p ? c : a_up[i] + delta;
        } else {
            a_dn[i] = delta == room_p ? 0.0 : a_dn[i] - delta;
        }
        if (q.upper) {
            a_up[j] = delta == room_q ? 0.0 : a_up[j] - delta;
        } else {
            a_dn[j] = delta == room_q ? c : a_dn[j] + delta;
        }

        if (i != j) {
            for (int k = 0; k < n; ++k) {
                grad[k] += delta * (gram[k * n + i] - gram[k * n + j]);
            }
        }
        record_objective();
    }

    if (diagnostics != nullptr) {
        diagnostics->iterations = iterations;
        diagnostics->final_violation = std::max(0.0, last_m - last_big_m);
    }

    SvrModel model;
    model.kernel = params.kernel;
    model.params = params;

    bool any_support = false;
    for (int i = 0; i < n; ++i) {
        if (a_up[i] - a_dn[i] != 0.0) {
            any_support = true;
            break;
        }
    }

    if (!any_support) {
        model.bias = mean(ys);
        return model;
    }

    double candidate_sum = 0.0;
    int candidate_count = 0;
    for (int i = 0; i < n; ++i) {
        if (a_up[i] > 0.0 && a_up[i] < c) {
            candidate_sum += -grad[i] - eps;
            ++candidate_count;
        }
        if (a_dn[i] > 0.0 && a_dn[i] < c) {
            candidate_sum += -grad[i] + eps;
            ++candidate_count;
        }
    }
    if (candidate_count > 0) {
        model.bias = candidate_sum / candidate_count;
    } else if (std::isfinite(last_m) && std::isfinite(last_big_m)) {
        model.bias = 0.5 * (last_m + last_big_m);
    } else if (std::isfinite(last_m)) {
        model.bias = last_m;
    } else if (std::isfinite(last_big_m)) {
        model.bias = last_big_m;
    } else {
        model.bias = mean(ys);
    }

    for (int i = 0; i < n; ++i) {
        double coefficient = a_up[i] - a_dn[i];
        if (coefficient != 0.0) {
            model.support_inputs.push_back(xs[i]);
            model.dual_coefficients.push_back(coefficient);
        }
    }
    return model;
}

double predict(const SvrModel& model, const FeatureVector& x) {
    double sum = model.bias;
    for (std::size_t i = 0; i < model.support_inputs.size(); ++i) {
        sum += model.dual_coefficients[i] *
               kernel_eval(model.kernel, model.support_inputs[i], x);
    }
    return sum;
}

double dual_objective(const std::vector<double>& beta,
                      const std::vector<double>& gram,
                      const std::vector<double>& ys, double epsilon) {
    const std::size_t n = ys.size();
    double quadratic = 0.0;
    double l1 = 0.0;
    double linear = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += gram[i * n + j] * beta[j];
        quadratic += beta[i] * row;
        l1 += std::abs(beta[i]);
        linear += ys[i] * beta[i];
    }
    return -0.5 * quadratic - epsilon * l1 + linear;
}

double kkt_violation(const SvrModel& model,
                     const std::vector<FeatureVector>& xs,
                     const std::vector<double>& ys) {
    if (xs.empty() || xs.size() != ys.size()) {
        throw ValidationError("data for the KKT check is empty or mismatched");
    }
    const std::size_t n = xs.size();

    std::vector<double> beta(n, 0.0);
    std::size_t cursor = 0;
    for (std::size_t s = 0; s < model.support_inputs.size(); ++s) {
        while (cursor < n && xs[cursor] != model.support_inputs[s]) ++cursor;
        if (cursor == n) {
            throw ValidationError(
                "support input not found among the supplied data");
        }
        beta[cursor] = model.dual_coefficients[s];
        ++cursor;
    }

    const std::vector<double> gram = gram_matrix(model.kernel, xs);
    const double c = model.params.c;
    const double eps = model.params.epsilon;

    std::vector<double> grad(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += gram[i * n + j] * beta[j];
        grad[i] = row - ys[i];
    }

    double m = -std::numeric_limits<double>::infinity();
    double big_m = std::numeric_limits<double>::infinity();
    double equality = 0.0;
    double box = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        equality += beta[i];
        box = std::max(box, std::abs(beta[i]) - c);
        if (beta[i] < c) m = std::max(m, -grad[i] - eps);
        if (beta[i] < 0.0) m = std::max(m, -grad[i] + eps);
        if (beta[i] > 0.0) big_m = std::min(big_m, -grad[i] - eps);
        if (beta[i] > -c) big_m = std::min(big_m, -grad[i] + eps);
    }

    double gap = 0.0;
    if (std::isfinite(m) && std::isfinite(big_m)) {
        gap = std::max(0.0, m - big_m);
    }
    return std::max({gap, std::abs(equality), std::max(box, 0.0)});
}

}  // namespace ucpsvr
