#include "ucpsvr/kernels.hpp"

#include <cmath>

#include "ucpsvr/errors.hpp"

namespace ucpsvr {

namespace {

double dot(const FeatureVector& a, const FeatureVector& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

double squared_distance(const FeatureVector& a, const FeatureVector& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

}  // namespace

int kernel_code(KernelFamily family) {
    switch (family) {
        case KernelFamily::Linear:
            return 0;
        case KernelFamily::Polynomial:
            return 1;
        case KernelFamily::Rbf:
            return 2;
        case KernelFamily::Sigmoid:
            return 3;
    }
    throw ValidationError("unknown kernel family");
}

KernelFamily kernel_family_from_code(int code) {
    switch (code) {
        case 0:
            return KernelFamily::Linear;
        case 1:
            return KernelFamily::Polynomial;
        case 2:
            return KernelFamily::Rbf;
        case 3:
            return KernelFamily::Sigmoid;
    }
    throw ValidationError("kernel code must be 0, 1, 2 or 3, got " +
                          std::to_string(code));
}

std::string kernel_name(KernelFamily family) {
    switch (family) {
        case KernelFamily::Linear:
            return "linear";
        case KernelFamily::Polynomial:
            return "poly";
        case KernelFamily::Rbf:
            return "rbf";
        case KernelFamily::Sigmoid:
            return "sigmoid";
    }
    throw ValidationError("unknown kernel family");
}

void validate_kernel_spec(const KernelSpec& spec) {
    bool needs_positive_gamma = spec.family == KernelFamily::Polynomial ||
                                spec.family == KernelFamily::Rbf;
    if (needs_positive_gamma && !(spec.gamma > 0.0)) {
        throw ValidationError("gamma must be positive for the " +
                              kernel_name(spec.family) + " kernel");
    }
    if (spec.degree < 1) {
        throw ValidationError("kernel degree must be at least 1");
    }
    if (!std::isfinite(spec.gamma) || !std::isfinite(spec.coef0)) {
        throw ValidationError("kernel parameters must be finite");
    }
}

double kernel_eval(const KernelSpec& spec, const FeatureVector& a,
                   const FeatureVector& b) {
    if (a.size() != b.size()) {
        throw ValidationError("kernel inputs have dimensions " +
                              std::to_string(a.size()) + " and " +
                              std::to_string(b.size()));
    }
    double value = 0.0;
    switch (spec.family) {
        case KernelFamily::Linear:
            value = dot(a, b);
            break;
        case KernelFamily::Polynomial:
            value = std::pow(spec.gamma * dot(a, b) + spec.coef0, spec.degree);
            break;
        case KernelFamily::Rbf:
            value = std::exp(-spec.gamma * squared_distance(a, b));
            break;
        case KernelFamily::Sigmoid:
            value = std::tanh(spec.gamma * dot(a, b) + spec.coef0);
            break;
    }
    if (!std::isfinite(value)) {
        throw NumericError("kernel evaluation produced a non-finite value (" +
                           kernel_name(spec.family) + ")");
    }
    return value;
}

std::vector<double> gram_matrix(const KernelSpec& spec,
                                const std::vector<FeatureVector>& xs) {
    if (xs.empty()) {
        throw ValidationError("gram matrix requires at least one vector");
    }
    std::size_t n = xs.size();
    for (const FeatureVector& x : xs) {
        if (x.size() != xs.front().size()) {
            throw ValidationError("gram matrix inputs must share one dimension");
        }
    }
    std::vector<double> gram(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double value = kernel_eval(spec, xs[i], xs[j]);
            gram[i * n + j] = value;
            gram[j * n + i] = value;
        }
    }
    return gram;
}

}  // namespace ucpsvr
