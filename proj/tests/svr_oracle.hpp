#pragma once

// Exhaustive reference solver for tiny epsilon-insensitive SVR duals, used to
// cross-check the iterative trainer. Every point is assigned one of five KKT
// states (inactive, free at either tube edge, bound at either box edge); each
// assignment fixes a small linear system whose solution is validated against
// the full KKT conditions. The best valid objective is the exact optimum.
// Everything here (normalization, kernels, objective) is computed from
// scratch so the only shared ingredient with the trainer is the problem
// definition itself.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "windcast/rng.hpp"
#include "windcast/svr.hpp"

namespace svr_oracle {

struct Instance {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> inputs;  // row-major n x dim
  std::vector<double> targets;
  windcast::svr::KernelSpec kernel;
  windcast::svr::SvrHyperparams hp;
};

// Five-point instances; linear kernels get more coordinates than points so
// the Gram matrix stays nonsingular.
inline Instance make_instance(windcast::kernels::KernelKind kind, std::uint64_t seed) {
  Instance inst;
  inst.n = 5;
  inst.dim = (kind == windcast::kernels::KernelKind::linear) ? 6 : 3;
  windcast::Rng rng(seed);
  inst.inputs.resize(inst.n * inst.dim);
  for (auto& v : inst.inputs) v = rng.normal();
  inst.targets.resize(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < inst.dim; ++j) s += inst.inputs[i * inst.dim + j];
    inst.targets[i] = 0.7 * s + 0.3 * rng.normal();
  }
  inst.kernel.kind = kind;
  inst.kernel.gamma = (seed % 2 == 0) ? 0.0 : 0.5;
  inst.hp.c = 0.5 + static_cast<double>(seed % 3);
  inst.hp.epsilon = 0.1;
  inst.hp.tol = 1e-5;
  inst.hp.max_iter = 100000;
  return inst;
}

inline windcast::svr::EmbeddedSet as_embedded(const Instance& inst) {
  windcast::svr::EmbeddedSet set;
  set.lag = inst.dim;
  set.inputs = inst.inputs;
  set.targets = inst.targets;
  return set;
}

// Solves A u = rhs in place by Gaussian elimination with partial pivoting.
// Returns false when the matrix is effectively singular.
inline bool solve_dense(std::vector<double>& a, std::vector<double>& rhs, std::size_t m) {
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(a[r * m + col]) > std::abs(a[piv * m + col])) piv = r;
    }
    if (std::abs(a[piv * m + col]) < 1e-10) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < m; ++c) std::swap(a[piv * m + c], a[col * m + c]);
      std::swap(rhs[piv], rhs[col]);
    }
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r * m + col] / a[col * m + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t ri = m; ri-- > 0;) {
    double acc = rhs[ri];
    for (std::size_t c = ri + 1; c < m; ++c) acc -= a[ri * m + c] * rhs[c];
    rhs[ri] = acc / a[ri * m + ri];
  }
  return true;
}

// Exact maximum of the dual objective, computed in the same normalized space
// the trainer works in.
inline double brute_force_objective(const Instance& inst) {
  const std::size_t n = inst.n;
  const std::size_t m = inst.dim;

  std::vector<double> mean(m, 0.0), spread(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) mean[j] += inst.inputs[i * m + j];
  }
  for (std::size_t j = 0; j < m; ++j) mean[j] /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = inst.inputs[i * m + j] - mean[j];
      spread[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    spread[j] = std::sqrt(spread[j] / static_cast<double>(n));
    if (spread[j] <= 0.0) spread[j] = 1.0;
  }
  std::vector<double> xs(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      xs[i * m + j] = (inst.inputs[i * m + j] - mean[j]) / spread[j];
    }
  }
  double ym = 0, ysd = 0;
  for (double v : inst.targets) ym += v;
  ym /= static_cast<double>(n);
  for (double v : inst.targets) ysd += (v - ym) * (v - ym);
  ysd = std::sqrt(ysd / static_cast<double>(n));
  if (ysd <= 0.0) ysd = 1.0;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = (inst.targets[i] - ym) / ysd;

  double gamma = inst.kernel.gamma;
  if (inst.kernel.kind == windcast::kernels::KernelKind::rbf && gamma <= 0.0) {
    gamma = 1.0 / static_cast<double>(m);
  }
  std::vector<double> K(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0;
      if (inst.kernel.kind == windcast::kernels::KernelKind::linear) {
        for (std::size_t d = 0; d < m; ++d) acc += xs[i * m + d] * xs[j * m + d];
      } else {
        for (std::size_t d = 0; d < m; ++d) {
          const double diff = xs[i * m + d] - xs[j * m + d];
          acc += diff * diff;
        }
        acc = std::exp(-gamma * acc);
      }
      K[i * n + j] = acc;
    }
  }

  const double C = inst.hp.c;
  const double eps = inst.hp.epsilon;
  double best = -std::numeric_limits<double>::infinity();

  // states: 0 inactive, 1 free+, 2 bound+ (beta=C), 3 free-, 4 bound- (beta=-C)
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 5;
  std::vector<int> state(n);
  std::vector<std::size_t> free_idx;
  std::vector<double> beta(n), A, rhs;

  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      state[i] = static_cast<int>(c % 5);
      c /= 5;
    }
    free_idx.clear();
    double fixed_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      switch (state[i]) {
        case 0: beta[i] = 0; break;
        case 1: case 3: free_idx.push_back(i); beta[i] = 0; break;
        case 2: beta[i] = C; fixed_sum += C; break;
        case 4: beta[i] = -C; fixed_sum -= C; break;
      }
    }
    const std::size_t F = free_idx.size();
    double b = 0;

    if (F == 0) {
      if (std::abs(fixed_sum) > 1e-9) continue;
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        double f = 0;
        for (std::size_t j = 0; j < n; ++j) f += K[i * n + j] * beta[j];
        const double r = y[i] - f;
        if (state[i] == 0) {
          lo = std::max(lo, r - eps);
          hi = std::min(hi, r + eps);
        } else if (state[i] == 2) {
          hi = std::min(hi, r - eps);
        } else {
          lo = std::max(lo, r + eps);
        }
      }
      if (lo > hi + 1e-9) continue;
      b = 0.5 * (std::max(lo, -1e12) + std::min(hi, 1e12));
    } else {
      const std::size_t dim_sys = F + 1;
      A.assign(dim_sys * dim_sys, 0.0);
      rhs.assign(dim_sys, 0.0);
      for (std::size_t r = 0; r < F; ++r) {
        const std::size_t i = free_idx[r];
        for (std::size_t ccol = 0; ccol < F; ++ccol) {
          A[r * dim_sys + ccol] = K[i * n + free_idx[ccol]];
        }
        A[r * dim_sys + F] = 1.0;  // bias column
        double off = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (state[j] == 2 || state[j] == 4) off += K[i * n + j] * beta[j];
        }
        const double sign = (state[i] == 1) ? 1.0 : -1.0;
        rhs[r] = y[i] - sign * eps - off;
      }
      for (std::size_t ccol = 0; ccol < F; ++ccol) A[F * dim_sys + ccol] = 1.0;
      rhs[F] = -fixed_sum;
      if (!solve_dense(A, rhs, dim_sys)) continue;
      bool ok = true;
      for (std::size_t r = 0; r < F; ++r) {
        const double v = rhs[r];
        if (state[free_idx[r]] == 1 && (v < -1e-12 || v > C + 1e-12)) ok = false;
        if (state[free_idx[r]] == 3 && (v > 1e-12 || v < -C - 1e-12)) ok = false;
      }
      if (!ok) continue;
      for (std::size_t r = 0; r < F; ++r) beta[free_idx[r]] = rhs[r];
      b = rhs[F];

      for (std::size_t i = 0; i < n && ok; ++i) {
        double f = 0;
        for (std::size_t j = 0; j < n; ++j) f += K[i * n + j] * beta[j];
        const double r = y[i] - f - b;
        if (state[i] == 0 && std::abs(r) > eps + 1e-9) ok = false;
        if (state[i] == 2 && r < eps - 1e-9) ok = false;
        if (state[i] == 4 && r > -eps + 1e-9) ok = false;
      }
      if (!ok) continue;
    }

    double w = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double f = 0;
      for (std::size_t j = 0; j < n; ++j) f += K[i * n + j] * beta[j];
      w += -0.5 * beta[i] * f - eps * std::abs(beta[i]) + y[i] * beta[i];
    }
    if (w > best) best = w;
  }
  return best;
}

}  // namespace svr_oracle
