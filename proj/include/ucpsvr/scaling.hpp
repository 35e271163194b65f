#pragma once

#include <vector>

namespace ucpsvr {

struct ScalingParams {
    double min_value = 0.0;
    double max_value = 0.0;
};

ScalingParams scale_fit(const std::vector<double>& values);

// (x - min)/(max - min); a zero-width range maps every input to 0.5.
double scale_apply(const ScalingParams& p, double x);

// Inverse of scale_apply for max > min; for a zero-width range every scaled
// value maps back to the single original value.
double scale_invert(const ScalingParams& p, double scaled);

}  // namespace ucpsvr
