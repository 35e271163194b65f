#include "ucpsvr/scaling.hpp"

#include <algorithm>

#include "ucpsvr/errors.hpp"

namespace ucpsvr {

ScalingParams scale_fit(const std::vector<double>& values) {
    if (values.empty()) {
        throw ValidationError("cannot fit scaling to an empty list");
    }
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return {*lo, *hi};
}

double scale_apply(const ScalingParams& p, double x) {
    if (p.max_value == p.min_value) return 0.5;
    return (x - p.min_value) / (p.max_value - p.min_value);
}

double scale_invert(const ScalingParams& p, double scaled) {
    if (p.max_value == p.min_value) return p.min_value;
    return p.min_value + scaled * (p.max_value - p.min_value);
}

}  // namespace ucpsvr
