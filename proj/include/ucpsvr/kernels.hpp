#pragma once

#include <string>
#include <vector>

namespace ucpsvr {

using FeatureVector = std::vector<double>;

enum class KernelFamily { Linear, Polynomial, Rbf, Sigmoid };

struct KernelSpec {
    KernelFamily family = KernelFamily::Rbf;
    double gamma = 1.0;
    double coef0 = 0.0;
    int degree = 3;
};

// Integer codes used by parameter strings and model files:
// 0=Linear, 1=Polynomial, 2=Rbf, 3=Sigmoid.
int kernel_code(KernelFamily family);
KernelFamily kernel_family_from_code(int code);
std::string kernel_name(KernelFamily family);

void validate_kernel_spec(const KernelSpec& spec);

double kernel_eval(const KernelSpec& spec, const FeatureVector& a,
                   const FeatureVector& b);

// Dense symmetric Gram matrix, row-major n*n. The upper triangle is
// computed and mirrored so (i,j) and (j,i) are the same double.
std::vector<double> gram_matrix(const KernelSpec& spec,
                                const std::vector<FeatureVector>& xs);

}  // namespace ucpsvr
