#include "windcast/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace windcast::kernels {

namespace {

// Minimum problem size before a kernel goes parallel.
constexpr std::int64_t kMinFilterParallel = 4096;
constexpr std::int64_t kMinRowsParallel = 512;

double powi(double base, int times) {
  double tmp = base, ret = 1.0;
  for (int t = times; t > 0; t /= 2) {
    if (t % 2 == 1) ret *= tmp;
    tmp *= tmp;
  }
  return ret;
}

std::vector<std::size_t> tap_offsets(std::size_t taps, std::size_t step, std::size_t n) {
  std::vector<std::size_t> off(taps);
  const std::size_t s = step % n;
  std::size_t cur = 0;
  for (std::size_t l = 0; l < taps; ++l) {
    off[l] = cur;
    cur += s;
    if (cur >= n) cur -= n;
  }
  return off;
}

}  // namespace

std::string kernel_kind_to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::linear:
      return "linear";
    case KernelKind::rbf:
      return "rbf";
    case KernelKind::polynomial:
      return "polynomial";
  }
  return "rbf";
}

KernelKind kernel_kind_from_string(const std::string& name) {
  if (name == "linear") return KernelKind::linear;
  if (name == "rbf") return KernelKind::rbf;
  if (name == "polynomial") return KernelKind::polynomial;
  throw std::invalid_argument("unknown kernel '" + name +
                              "' (expected linear, rbf or polynomial)");
}

double kernel_eval(const KernelParams& kp, const double* a, const double* b, std::size_t dim) {
  switch (kp.kind) {
    case KernelKind::linear: {
      double dot = 0.0;
      for (std::size_t i = 0; i < dim; ++i) dot += a[i] * b[i];
      return dot;
    }
    case KernelKind::rbf: {
      double d2 = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        const double d = a[i] - b[i];
        d2 += d * d;
      }
      return std::exp(-kp.gamma * d2);
    }
    case KernelKind::polynomial: {
      double dot = 0.0;
      for (std::size_t i = 0; i < dim; ++i) dot += a[i] * b[i];
      return powi(dot + kp.coef0, kp.degree);
    }
  }
  return 0.0;
}

void circular_filter_causal(std::span<const double> x, std::span<const double> f,
                            std::size_t step, std::span<double> out) {
  assert(x.size() == out.size());
  assert(x.data() != out.data());
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  const std::size_t taps = f.size();
  const auto off = tap_offsets(taps, step, x.size());
#pragma omp parallel for schedule(static) if (n >= kMinFilterParallel)
  for (std::int64_t t = 0; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t l = 0; l < taps; ++l) {
      const std::size_t o = off[l];
      const std::size_t j =
          static_cast<std::size_t>(t) >= o ? static_cast<std::size_t>(t) - o
                                           : static_cast<std::size_t>(t) + x.size() - o;
      acc += f[l] * x[j];
    }
    out[t] = acc;
  }
}

void circular_filter_anticausal(std::span<const double> x, std::span<const double> f,
                                std::size_t step, std::span<double> out) {
  assert(x.size() == out.size());
  assert(x.data() != out.data());
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  const std::size_t taps = f.size();
  const auto off = tap_offsets(taps, step, x.size());
#pragma omp parallel for schedule(static) if (n >= kMinFilterParallel)
  for (std::int64_t t = 0; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t l = 0; l < taps; ++l) {
      std::size_t j = static_cast<std::size_t>(t) + off[l];
      if (j >= x.size()) j -= x.size();
      acc += f[l] * x[j];
    }
    out[t] = acc;
  }
}

void kernel_vs_rows(const double* xmat, std::size_t n, std::size_t dim,
                    const KernelParams& kp, const double* x, double* out) {
  const std::int64_t nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (nn >= kMinRowsParallel)
  for (std::int64_t j = 0; j < nn; ++j) {
    out[j] = kernel_eval(kp, x, xmat + static_cast<std::size_t>(j) * dim, dim);
  }
}

namespace serial {

void circular_filter_causal(std::span<const double> x, std::span<const double> f,
                            std::size_t step, std::span<double> out) {
  assert(x.size() == out.size());
  const std::size_t n = x.size();
  const std::size_t taps = f.size();
  const auto off = tap_offsets(taps, step, n);
  for (std::size_t t = 0; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t l = 0; l < taps; ++l) {
      const std::size_t j = t >= off[l] ? t - off[l] : t + n - off[l];
      acc += f[l] * x[j];
    }
    out[t] = acc;
  }
}

void circular_filter_anticausal(std::span<const double> x, std::span<const double> f,
                                std::size_t step, std::span<double> out) {
  assert(x.size() == out.size());
  const std::size_t n = x.size();
  const std::size_t taps = f.size();
  const auto off = tap_offsets(taps, step, n);
  for (std::size_t t = 0; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t l = 0; l < taps; ++l) {
      std::size_t j = t + off[l];
      if (j >= n) j -= n;
      acc += f[l] * x[j];
    }
    out[t] = acc;
  }
}

void kernel_vs_rows(const double* xmat, std::size_t n, std::size_t dim,
                    const KernelParams& kp, const double* x, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = kernel_eval(kp, x, xmat + j * dim, dim);
  }
}

}  // namespace serial

}  // namespace windcast::kernels
