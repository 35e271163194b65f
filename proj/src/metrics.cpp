#include "ucpsvr/metrics.hpp"

#include <cmath>
#include <limits>

#include "ucpsvr/errors.hpp"
#include "ucpsvr/numfmt.hpp"

namespace ucpsvr {

namespace {

void check_pairs(const std::vector<double>& actual,
                 const std::vector<double>& predicted) {
    if (actual.empty()) {
        throw ValidationError("metric input is empty");
    }
    if (actual.size() != predicted.size()) {
        throw ValidationError("actual and predicted lengths differ: " +
                              std::to_string(actual.size()) + " vs " +
                              std::to_string(predicted.size()));
    }
}

double mean_of(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

}  // namespace

double mse(const std::vector<double>& actual,
           const std::vector<double>& predicted) {
    check_pairs(actual, predicted);
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        double diff = actual[i] - predicted[i];
        sum += diff * diff;
    }
    return sum / static_cast<double>(actual.size());
}

double rmse(double mse_value) {
    if (mse_value < 0.0) {
        throw ValidationError("mean squared error cannot be negative");
    }
    return std::sqrt(mse_value);
}

double nrms(double rmse_value, const std::vector<double>& reference_actuals) {
    if (reference_actuals.size() < 2) {
        throw ValidationError("NRMS needs at least two reference values");
    }
    double sd = std_deviation(reference_actuals);
    if (sd == 0.0) {
        throw ValidationError(
            "NRMS is undefined when the reference values have zero spread");
    }
    return rmse_value / sd;
}

double mmre(const std::vector<double>& actual,
            const std::vector<double>& predicted) {
    check_pairs(actual, predicted);
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0) {
            throw ValidationError("MMRE is undefined for a zero actual value");
        }
        sum += std::abs(actual[i] - predicted[i]) / actual[i];
    }
    return sum / static_cast<double>(actual.size());
}

double pred(const std::vector<double>& actual,
            const std::vector<double>& predicted) {
    check_pairs(actual, predicted);
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        sum += std::abs(actual[i] - predicted[i]);
    }
    double mae = sum / static_cast<double>(actual.size());
    return (1.0 - mae) * 100.0;
}

double r_squared(const std::vector<double>& actual,
                 const std::vector<double>& predicted) {
    check_pairs(actual, predicted);
    if (actual.size() < 2) {
        throw ValidationError("correlation needs at least two pairs");
    }
    double mean_a = mean_of(actual);
    double mean_p = mean_of(predicted);
    double cov = 0.0;
    double var_a = 0.0;
    double var_p = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        double da = actual[i] - mean_a;
        double dp = predicted[i] - mean_p;
        cov += da * dp;
        var_a += da * da;
        var_p += dp * dp;
    }
    if (var_a == 0.0 || var_p == 0.0) {
        throw ValidationError(
            "correlation is undefined for a zero-variance input");
    }
    double r = cov / std::sqrt(var_a * var_p);
    return r * r;
}

double std_deviation(const std::vector<double>& values) {
    if (values.empty()) {
        throw ValidationError("standard deviation of an empty list");
    }
    double m = mean_of(values);
    double sum = 0.0;
    for (double v : values) {
        double d = v - m;
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(values.size()));
}

EvaluationReport evaluate(const std::vector<double>& actual,
                          const std::vector<double>& predicted) {
    EvaluationReport report;
    report.n = actual.size();
    report.mse = mse(actual, predicted);
    report.rmse = rmse(report.mse);
    report.pred = pred(actual, predicted);
    // The remaining statistics are undefined on degenerate inputs (zero
    // spread, a zero actual). The composite report records NaN for those
    // slots rather than failing the whole evaluation; callers that need the
    // strict behavior use the individual functions.
    auto defined = [](auto&& compute) {
        try {
            return compute();
        } catch (const ValidationError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    report.nrms = defined([&] { return nrms(report.rmse, actual); });
    report.mmre = defined([&] { return mmre(actual, predicted); });
    report.r_squared = defined([&] { return r_squared(actual, predicted); });
    return report;
}

std::string render_report_text(const EvaluationReport& report) {
    std::string out;
    out += "MSE     " + format_fixed(report.mse, 4) + "\n";
    out += "RMSE    " + format_fixed(report.rmse, 4) + "\n";
    out += "NRMS    " + format_fixed(report.nrms, 4) + "\n";
    out += "MMRE    " + format_fixed(report.mmre, 4) + "\n";
    out += "PRED    " + format_fixed(report.pred, 4) + "\n";
    out += "R2      " + format_fixed(report.r_squared, 4) + "\n";
    out += "N       " + std::to_string(report.n) + "\n";
    return out;
}

std::string render_report_csv_row(const EvaluationReport& report) {
    return format_full(report.mse) + "," + format_full(report.rmse) + "," +
           format_full(report.nrms) + "," + format_full(report.mmre) + "," +
           format_full(report.pred) + "," + format_full(report.r_squared) +
           "," + std::to_string(report.n);
}

}  // namespace ucpsvr
