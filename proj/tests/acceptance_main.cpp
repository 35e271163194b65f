// Acceptance gate: one check per published criterion, one PASS/FAIL line
// each, nonzero exit when anything fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "qp_oracle.hpp"
#include "synthetic.hpp"
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

namespace fs = std::filesystem;
using namespace ucpsvr;

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

struct Gate {
    int failures = 0;

    template <typename Body>
    void criterion(const std::string& name, Body&& body) {
        std::string detail;
        bool passed = false;
        try {
            passed = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("unexpected error: ") + e.what();
        }
        if (passed) {
            std::cout << "PASS: " << name << "\n";
        } else {
            ++failures;
            std::cout << "FAIL: " << name << " (" << detail << ")\n";
        }
        std::cout.flush();
    }
};

bool nearly(double a, double b, double tolerance) {
    return std::abs(a - b) <= tolerance;
}

// ---- shared fixtures -------------------------------------------------------

struct KernelOutcome {
    GridSearchReport report;
    FinalizedModel finalized;
};

struct SharedState {
    LabeledDataset scaled_full;
    LabeledDataset scaled_train;
    LabeledDataset scaled_test;
    std::map<KernelFamily, KernelOutcome> outcomes;
    double derivation_seconds = 0.0;
    std::string error;
};

SharedState build_shared_state() {
    SharedState state;
    try {
        LabeledDataset raw = synth::synthetic84();
        state.scaled_full = scale_dataset(raw);
        auto [train, test] = split_test(state.scaled_full);
        state.scaled_train = train;
        state.scaled_test = test;

        auto start = std::chrono::steady_clock::now();
        for (KernelFamily family :
             {KernelFamily::Linear, KernelFamily::Polynomial, KernelFamily::Rbf,
              KernelFamily::Sigmoid}) {
            KernelOutcome outcome;
            outcome.report =
                grid_search(state.scaled_train, family, default_grid());
            outcome.finalized = select_and_finalize(
                state.scaled_train, state.scaled_test, outcome.report);
            state.outcomes.emplace(family, std::move(outcome));
        }
        state.derivation_seconds = elapsed_seconds(start);
    } catch (const std::exception& e) {
        state.error = e.what();
    }
    return state;
}

std::string best_family_by_mmre(const SharedState& state) {
    std::string best_name;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [family, outcome] : state.outcomes) {
        double mmre = outcome.finalized.test_eval.mmre;
        if (mmre < best) {
            best = mmre;
            best_name = kernel_name(family);
        }
    }
    return best_name;
}

std::string read_file(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    std::stringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

// ---- criteria --------------------------------------------------------------

bool check_ucp_goldens(std::string& detail) {
    ProjectDescriptor zero;
    zero.name = "zero";
    zero.actors = {ActorClass::Simple, ActorClass::Average};
    zero.use_case_transactions = {2, 5, 9};
    UcpBreakdown z = compute_ucp(zero);
    if (!nearly(z.tcf, 0.6, 1e-12) || !nearly(z.ef, 1.4, 1e-12)) {
        detail = "zero-ratings TCF/EF = " + format_full(z.tcf) + "/" +
                 format_full(z.ef);
        return false;
    }
    if (!nearly(z.ucp, z.uucp * 0.84, 1e-12)) {
        detail = "zero-ratings UCP " + format_full(z.ucp) +
                 " is not UUCP*0.84 = " + format_full(z.uucp * 0.84);
        return false;
    }

    ProjectDescriptor full = zero;
    full.name = "full";
    full.technical.ratings.fill(5);
    full.environmental.ratings.fill(5);
    UcpBreakdown f = compute_ucp(full);
    if (!nearly(f.tcf, 1.35, 1e-12) || !nearly(f.ef, 0.275, 1e-12)) {
        detail = "full-marks TCF/EF = " + format_full(f.tcf) + "/" +
                 format_full(f.ef);
        return false;
    }
    return true;
}

bool check_oracle_equivalence(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(811);
    const double cs[] = {0.5, 1.0, 10.0};
    const double epsilons[] = {0.0, 0.05, 0.2};
    const double gammas[] = {0.5, 1.0, 2.0};
    // The tanh gram is only near-positive-semidefinite for moderate gamma on
    // [0,1] inputs. Larger gamma makes the dual non-concave, where distinct
    // first-order points with different objectives exist and agreement with
    // an independently-pathed reference solver is no longer well defined, so
    // the sigmoid family sweeps its own smaller gamma cycle.
    const double sigmoid_gammas[] = {0.25, 0.5, 1.0};

    for (int index = 0; index < 50; ++index) {
        synth::SmallInstance instance = synth::small_instance(rng);
        double c = cs[index % 3];
        double epsilon = epsilons[(index / 3) % 3];
        int gamma_slot = (index / 9) % 3;

        for (KernelFamily family :
             {KernelFamily::Linear, KernelFamily::Polynomial, KernelFamily::Rbf,
              KernelFamily::Sigmoid}) {
            double gamma = family == KernelFamily::Sigmoid
                               ? sigmoid_gammas[gamma_slot]
                               : gammas[gamma_slot];
            SvrParams params;
            params.c = c;
            params.epsilon = epsilon;
            params.tolerance = 1e-9;
            params.kernel = KernelSpec{family, gamma, 0.0, 3};

            SvrModel model = train(instance.xs, instance.ys, params);
            oracle::OracleResult reference =
                oracle::oracle_train(instance.xs, instance.ys, params);

            std::vector<double> beta(instance.xs.size(), 0.0);
            std::size_t next = 0;
            for (std::size_t i = 0; i < instance.xs.size(); ++i) {
                if (next < model.support_inputs.size() &&
                    model.support_inputs[next] == instance.xs[i]) {
                    beta[i] = model.dual_coefficients[next++];
                }
            }
            double objective = dual_objective(
                beta, gram_matrix(params.kernel, instance.xs), instance.ys,
                epsilon);
            if (!nearly(objective, reference.objective, 1e-6)) {
                detail = "dataset " + std::to_string(index) + " " +
                         kernel_name(family) + ": objective " +
                         format_full(objective) + " vs oracle " +
                         format_full(reference.objective);
                return false;
            }

            SvrModel reference_model = oracle::oracle_model(
                instance.xs, instance.ys, params, reference);
            std::vector<FeatureVector> probes = instance.xs;
            probes.push_back({0.0});
            probes.push_back({0.33});
            probes.push_back({0.77});
            probes.push_back({1.0});
            for (const FeatureVector& probe : probes) {
                double mine = predict(model, probe);
                double theirs = predict(reference_model, probe);
                if (!nearly(mine, theirs, 1e-4)) {
                    detail = "dataset " + std::to_string(index) + " " +
                             kernel_name(family) + ": prediction at " +
                             format_full(probe[0]) + " differs by " +
                             format_full(std::abs(mine - theirs));
                    return false;
                }
            }
        }
    }

    double seconds = elapsed_seconds(start);
    if (seconds >= 30.0) {
        detail = "took " + format_fixed(seconds, 2) + " s, budget is 30 s";
        return false;
    }
    return true;
}

bool check_degenerate_epsilon(const SharedState& state, std::string& detail) {
    if (!state.error.empty()) {
        detail = "shared fixture failed: " + state.error;
        return false;
    }
    const GridSearchReport& report =
        state.outcomes.at(KernelFamily::Rbf).report;

    std::optional<double> reference;
    int matched = 0;
    for (std::size_t g = 0; g < report.gamma_values.size(); ++g) {
        for (std::size_t e = 0; e < report.epsilon_values.size(); ++e) {
            if (report.epsilon_values[e] < 1.0) continue;
            double value = report.cell(g, e).validation_error;
            if (report.cell(g, e).failed) {
                detail = "cell gamma index " + std::to_string(g) +
                         ", epsilon " + format_full(report.epsilon_values[e]) +
                         " failed";
                return false;
            }
            if (!reference) reference = value;
            if (value != *reference) {
                detail = "epsilon >= 1 cells disagree: " + format_full(value) +
                         " vs " + format_full(*reference);
                return false;
            }
            ++matched;
        }
    }
    if (matched != 75) {
        detail = "expected 75 degenerate cells, saw " + std::to_string(matched);
        return false;
    }
    return true;
}

bool check_grid_protocol(const SharedState& state, std::string& detail) {
    if (!state.error.empty()) {
        detail = "shared fixture failed: " + state.error;
        return false;
    }
    const GridSearchReport& report =
        state.outcomes.at(KernelFamily::Rbf).report;
    if (report.cells.size() != 90) {
        detail = "default grid evaluated " +
                 std::to_string(report.cells.size()) + " cells";
        return false;
    }
    if (state.scaled_test.records.size() != 17 ||
        state.scaled_train.records.size() != 67) {
        detail = "84-row split gave " +
                 std::to_string(state.scaled_test.records.size()) + " test / " +
                 std::to_string(state.scaled_train.records.size()) + " train";
        return false;
    }
    FoldAssignment folds = kfold_partitions(state.scaled_train);
    for (std::size_t i = 0; i < folds.fold_index_of.size(); ++i) {
        int expected = static_cast<int>(i % 5);
        if (folds.fold_index_of[i] != expected) {
            detail = "training record " + std::to_string(i + 1) +
                     " (1-based) landed in fold " +
                     std::to_string(folds.fold_index_of[i]);
            return false;
        }
    }
    if (folds.fold_index_of[0] != 0 || folds.fold_index_of[5] != 0 ||
        folds.fold_index_of[10] != 0) {
        detail = "records 1, 6, 11 are not all in fold 0";
        return false;
    }
    return true;
}

bool check_substitute_property(const SharedState& state, const fs::path& work,
                               std::string& detail) {
    if (!state.error.empty()) {
        detail = "shared fixture failed: " + state.error;
        return false;
    }
    fs::path data_path = work / "synthetic84.csv";
    synth::write_effort_csv(data_path.string(), synth::synthetic84());

    std::vector<KernelFamily> families = {
        KernelFamily::Linear, KernelFamily::Polynomial, KernelFamily::Rbf,
        KernelFamily::Sigmoid};

    auto start = std::chrono::steady_clock::now();
    RunManifest first = run_full_pipeline(data_path.string(), families,
                                          default_grid(),
                                          (work / "run_a").string());
    double seconds = elapsed_seconds(start);
    if (seconds >= 60.0) {
        detail = "pipeline took " + format_fixed(seconds, 2) +
                 " s, budget is 60 s";
        return false;
    }

    std::string derived_best = best_family_by_mmre(state);
    if (first.best_kernel_by_mmre != derived_best) {
        detail = "pipeline best kernel " + first.best_kernel_by_mmre +
                 " != derived " + derived_best;
        return false;
    }

    const KernelOutcome* best_outcome = nullptr;
    for (const auto& [family, outcome] : state.outcomes) {
        if (kernel_name(family) == derived_best) best_outcome = &outcome;
    }
    double r2 = best_outcome->finalized.test_eval.r_squared;
    double pred_value = best_outcome->finalized.test_eval.pred;
    if (!(r2 > 0.95)) {
        detail = "best kernel r^2 = " + format_full(r2);
        return false;
    }
    if (!(pred_value > 95.0)) {
        detail = "best kernel PRED = " + format_full(pred_value);
        return false;
    }

    RunManifest second = run_full_pipeline(data_path.string(), families,
                                           default_grid(),
                                           (work / "run_b").string());
    if (second.best_kernel_by_mmre != first.best_kernel_by_mmre) {
        detail = "rerun picked " + second.best_kernel_by_mmre + " over " +
                 first.best_kernel_by_mmre;
        return false;
    }
    std::string summary_a = read_file(work / "run_a" / "summary.csv");
    std::string summary_b = read_file(work / "run_b" / "summary.csv");
    if (summary_a.empty() || summary_a != summary_b) {
        detail = "rerun summary.csv differs";
        return false;
    }
    return true;
}

bool check_metric_identities(std::string& detail) {
    std::mt19937 rng(3301);
    std::uniform_int_distribution<int> length(3, 20);
    std::uniform_real_distribution<double> value(0.05, 2.0);

    for (int trial = 0; trial < 1000; ++trial) {
        int n = length(rng);
        std::vector<double> actual(n);
        std::vector<double> predicted(n);
        for (int i = 0; i < n; ++i) {
            actual[i] = value(rng);
            predicted[i] = value(rng);
        }

        double m = mse(actual, predicted);
        double r = rmse(m);
        if (std::abs(r * r - m) > 1e-12) {
            detail = "rmse^2 deviates by " + format_full(std::abs(r * r - m));
            return false;
        }

        double base = mmre(actual, predicted);
        for (double scale : {0.5, 3.0, 1e4}) {
            std::vector<double> sa(n);
            std::vector<double> sp(n);
            for (int i = 0; i < n; ++i) {
                sa[i] = scale * actual[i];
                sp[i] = scale * predicted[i];
            }
            double scaled = mmre(sa, sp);
            if (std::abs(scaled - base) > 1e-12 * (1.0 + base)) {
                detail = "mmre not scale invariant at c=" + format_full(scale);
                return false;
            }
        }

        if (pred(actual, actual) != 100.0) {
            detail = "pred of exact predictions is not 100";
            return false;
        }
        std::vector<double> nudged = actual;
        nudged[0] += 1e-8;
        if (!(pred(actual, nudged) < 100.0)) {
            detail = "pred stayed at 100 for inexact predictions";
            return false;
        }

        std::vector<double> affine(n);
        for (int i = 0; i < n; ++i) affine[i] = -2.25 * actual[i] + 0.4;
        double r2 = r_squared(actual, affine);
        if (std::abs(r2 - 1.0) > 1e-9) {
            detail = "affine r^2 = " + format_full(r2);
            return false;
        }
    }
    return true;
}

bool check_param_conformance(std::string& detail) {
    struct Expectation {
        const char* line;
        KernelFamily family;
        std::size_t gamma_index;
    };
    const Expectation expectations[] = {
        {"-s 3 -t 0 -c 0.9989 -g 0.0078 -p 0", KernelFamily::Linear, 0},
        {"-s 3 -t 1 -c 0.9989 -g 128 -p 0", KernelFamily::Polynomial, 14},
        {"-s 3 -t 2 -c 0.9989 -g 1 -p 0", KernelFamily::Rbf, 7},
        {"-s 3 -t 3 -c 0.9989 -g 0.5 -p 0", KernelFamily::Sigmoid, 6},
    };
    HyperGrid grid = default_grid();

    for (const Expectation& expected : expectations) {
        ParamString parsed = parse_param_string(expected.line);
        if (parsed.svm_type != 3 || parsed.kernel != expected.family) {
            detail = std::string("kernel mismatch for '") + expected.line + "'";
            return false;
        }
        if (parsed.epsilon != 0.0) {
            detail = std::string("epsilon is not 0 in '") + expected.line + "'";
            return false;
        }
        if (parsed.c != 0.9989) {
            detail = std::string("C mismatch in '") + expected.line + "'";
            return false;
        }
        double grid_gamma = grid.gamma_values[expected.gamma_index];
        if (format_compact4(grid_gamma) != format_compact4(parsed.gamma)) {
            detail = "gamma " + format_full(parsed.gamma) +
                     " does not round to grid value " +
                     format_full(grid_gamma);
            return false;
        }
    }

    // The grid indices above are the powers 2^-7, 2^7, 2^0, 2^-1.
    if (grid.gamma_values[0] != std::ldexp(1.0, -7) ||
        grid.gamma_values[14] != 128.0 || grid.gamma_values[7] != 1.0 ||
        grid.gamma_values[6] != 0.5) {
        detail = "default grid powers are misaligned";
        return false;
    }
    return true;
}

bool check_serialization(const fs::path& work, std::string& detail) {
    std::mt19937 rng(90210);
    std::uniform_real_distribution<double> c_dist(0.5, 10.0);
    std::uniform_real_distribution<double> eps_dist(0.0, 0.3);
    std::uniform_real_distribution<double> gamma_dist(0.25, 4.0);
    std::uniform_real_distribution<double> probe(0.0, 1.0);
    const KernelFamily families[] = {KernelFamily::Linear,
                                     KernelFamily::Polynomial, KernelFamily::Rbf,
                                     KernelFamily::Sigmoid};

    fs::path path = work / "round_trip.model";
    for (int index = 0; index < 100; ++index) {
        synth::SmallInstance instance = synth::small_instance(rng);
        SvrParams params;
        params.c = c_dist(rng);
        params.epsilon = eps_dist(rng);
        params.kernel =
            KernelSpec{families[index % 4], gamma_dist(rng), 0.0, 3};

        SvrModel model = train(instance.xs, instance.ys, params);
        StoredModel stored{model, ScalingParams{0.0, 1.0},
                           ScalingParams{0.0, 1.0}};
        save_model(path.string(), stored);
        StoredModel loaded = load_model(path.string());

        for (int q = 0; q < 100; ++q) {
            FeatureVector x{probe(rng)};
            double original = predict(stored.model, x);
            double reloaded = predict(loaded.model, x);
            if (std::bit_cast<std::uint64_t>(original) !=
                std::bit_cast<std::uint64_t>(reloaded)) {
                detail = "model " + std::to_string(index) +
                         " changed prediction at x=" + format_full(x[0]);
                return false;
            }
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc == 3 && std::string(argv[1]) == "--emit-data") {
        synth::write_effort_csv(argv[2], synth::synthetic84());
        std::cout << "wrote " << argv[2] << "\n";
        return 0;
    }
    if (argc != 1) {
        std::cerr << "usage: " << argv[0] << " [--emit-data PATH]\n";
        return 2;
    }

    fs::path work = fs::temp_directory_path() /
                    ("ucpsvr_acceptance_" + std::to_string(getpid()));
    fs::create_directories(work);

    SharedState state = build_shared_state();

    Gate gate;
    gate.criterion("ucp-golden-values", check_ucp_goldens);
    gate.criterion("svr-oracle-equivalence", check_oracle_equivalence);
    gate.criterion("degenerate-epsilon-columns", [&](std::string& detail) {
        return check_degenerate_epsilon(state, detail);
    });
    gate.criterion("grid-protocol-fidelity", [&](std::string& detail) {
        return check_grid_protocol(state, detail);
    });
    gate.criterion("synthetic-substitute-property", [&](std::string& detail) {
        return check_substitute_property(state, work, detail);
    });
    gate.criterion("metric-identities", check_metric_identities);
    gate.criterion("param-string-conformance", check_param_conformance);
    gate.criterion("serialization-round-trip", [&](std::string& detail) {
        return check_serialization(work, detail);
    });

    std::error_code ec;
    fs::remove_all(work, ec);

    if (gate.failures == 0) {
        std::cout << "all 8 criteria passed\n";
        return 0;
    }
    std::cout << gate.failures << " of 8 criteria failed\n";
    return 1;
}
