#pragma once

#include <string>

#include "ucpsvr/kernels.hpp"
#include "ucpsvr/svr.hpp"

namespace ucpsvr {

struct ParamString {
    int svm_type = 3;
    KernelFamily kernel = KernelFamily::Rbf;
    double c = 1.0;
    double gamma = 1.0;
    double epsilon = 0.1;
    std::string raw;
};

ParamString parse_param_string(const std::string& text);

// Full-precision rendering; parse(render(x)) preserves every value.
std::string render_param_string(const ParamString& params);

// 4-decimal rendering with trailing zeros trimmed, the layout used in
// result blocks.
std::string render_param_string_rounded(const ParamString& params);

SvrParams to_svr_params(const ParamString& params);

}  // namespace ucpsvr
