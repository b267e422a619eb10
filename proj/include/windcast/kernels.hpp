#pragma once

#include <cstddef>
#include <span>
#include <string>

// Low-level data-parallel kernels. The default entry points carry OpenMP
// pragmas; kernels::serial holds plain-loop reference implementations that
// produce bit-identical results. Tests compare the two and the benchmark
// target measures them against each other.

namespace windcast::kernels {

enum class KernelKind { linear, rbf, polynomial };

struct KernelParams {
  KernelKind kind = KernelKind::rbf;
  double gamma = 0.0;  // rbf width; <= 0 means "resolve to 1/dim at training"
  int degree = 3;      // polynomial
  double coef0 = 0.0;  // polynomial offset
};

std::string kernel_kind_to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

double kernel_eval(const KernelParams& kp, const double* a, const double* b, std::size_t dim);

// out[t] = sum_l f[l] * x[(t - step*l) mod n]   (analysis direction)
void circular_filter_causal(std::span<const double> x, std::span<const double> f,
                            std::size_t step, std::span<double> out);

// out[t] = sum_l f[l] * x[(t + step*l) mod n]   (synthesis direction)
void circular_filter_anticausal(std::span<const double> x, std::span<const double> f,
                                std::size_t step, std::span<double> out);

// out[j] = K(x, X[j]) for every row j of the n x dim row-major matrix X.
void kernel_vs_rows(const double* xmat, std::size_t n, std::size_t dim,
                    const KernelParams& kp, const double* x, double* out);

namespace serial {

void circular_filter_causal(std::span<const double> x, std::span<const double> f,
                            std::size_t step, std::span<double> out);
void circular_filter_anticausal(std::span<const double> x, std::span<const double> f,
                                std::size_t step, std::span<double> out);
void kernel_vs_rows(const double* xmat, std::size_t n, std::size_t dim,
                    const KernelParams& kp, const double* x, double* out);

}  // namespace serial

}  // namespace windcast::kernels
