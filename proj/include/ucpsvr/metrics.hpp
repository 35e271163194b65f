#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ucpsvr {

struct EvaluationReport {
    double mse = 0.0;
    double rmse = 0.0;
    double nrms = 0.0;
    double mmre = 0.0;
    double pred = 0.0;
    double r_squared = 0.0;
    std::size_t n = 0;
};

double mse(const std::vector<double>& actual,
           const std::vector<double>& predicted);
double rmse(double mse_value);
double nrms(double rmse_value, const std::vector<double>& reference_actuals);
double mmre(const std::vector<double>& actual,
            const std::vector<double>& predicted);
double pred(const std::vector<double>& actual,
            const std::vector<double>& predicted);
double r_squared(const std::vector<double>& actual,
                 const std::vector<double>& predicted);

// Population standard deviation (divide by N).
double std_deviation(const std::vector<double>& values);

// Computes every statistic at once. Statistics that are undefined for the
// given inputs (zero spread, a zero actual) come back as NaN instead of
// raising; use the individual functions for strict error reporting.
EvaluationReport evaluate(const std::vector<double>& actual,
                          const std::vector<double>& predicted);

std::string render_report_text(const EvaluationReport& report);
std::string render_report_csv_row(const EvaluationReport& report);

}  // namespace ucpsvr
