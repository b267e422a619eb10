#include "windcast/svr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace windcast::svr {

namespace {

constexpr std::size_t kRowCacheBudgetBytes = 256ull << 20;

// LRU cache of kernel matrix rows, sized so a month of 10-minute data keeps
// the whole matrix resident.
class RowCache {
 public:
  RowCache(const std::vector<double>& xmat, std::size_t n, std::size_t dim,
           const KernelSpec& kp)
      : xmat_(xmat), n_(n), dim_(dim), kp_(kp) {
    max_rows_ = std::max<std::size_t>(2, kRowCacheBudgetBytes / (n_ * sizeof(double)));
  }

  const double* row(std::size_t i) {
    auto it = index_.find(i);
    if (it != index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second.second);
      return it->second.first.data();
    }
    if (index_.size() >= max_rows_) {
      const std::size_t victim = lru_.back();
      lru_.pop_back();
      index_.erase(victim);
    }
    std::vector<double> r(n_);
    kernels::kernel_vs_rows(xmat_.data(), n_, dim_, kp_, xmat_.data() + i * dim_, r.data());
    lru_.push_front(i);
    auto [pos, inserted] = index_.emplace(i, std::make_pair(std::move(r), lru_.begin()));
    return pos->second.first.data();
  }

 private:
  const std::vector<double>& xmat_;
  std::size_t n_;
  std::size_t dim_;
  KernelSpec kp_;
  std::size_t max_rows_ = 2;
  std::list<std::size_t> lru_;
  std::unordered_map<std::size_t, std::pair<std::vector<double>, std::list<std::size_t>::iterator>>
      index_;
};

void validate_hyperparams(const SvrHyperparams& hp) {
  if (!(hp.c > 0.0)) throw std::invalid_argument("train_svr: C must be positive");
  if (!(hp.epsilon >= 0.0)) throw std::invalid_argument("train_svr: epsilon must be >= 0");
  if (!(hp.tol > 0.0)) throw std::invalid_argument("train_svr: tol must be positive");
  if (hp.max_iter < 1) throw std::invalid_argument("train_svr: max_iter must be >= 1");
}

KernelSpec resolve_kernel(const KernelSpec& kernel, std::size_t dim) {
  KernelSpec kp = kernel;
  if (kp.kind == KernelKind::rbf && kp.gamma <= 0.0) {
    kp.gamma = 1.0 / static_cast<double>(dim);
  }
  if (kp.kind == KernelKind::polynomial && kp.degree < 1) {
    throw std::invalid_argument("train_svr: polynomial degree must be >= 1");
  }
  return kp;
}

Scaling compute_scaling(const EmbeddedSet& data) {
  const std::size_t n = data.size();
  const std::size_t m = data.lag;
  Scaling sc;
  sc.x_mean.assign(m, 0.0);
  sc.x_spread.assign(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) sc.x_mean[j] += data.inputs[i * m + j];
  }
  for (std::size_t j = 0; j < m; ++j) sc.x_mean[j] /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = data.inputs[i * m + j] - sc.x_mean[j];
      sc.x_spread[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    sc.x_spread[j] = std::sqrt(sc.x_spread[j] / static_cast<double>(n));
    if (sc.x_spread[j] <= 0.0) sc.x_spread[j] = 1.0;
  }
  double ym = 0.0;
  for (double v : data.targets) ym += v;
  ym /= static_cast<double>(n);
  double ys = 0.0;
  for (double v : data.targets) ys += (v - ym) * (v - ym);
  ys = std::sqrt(ys / static_cast<double>(n));
  sc.y_mean = ym;
  sc.y_spread = ys > 0.0 ? ys : 1.0;
  return sc;
}

struct PairChoice {
  bool has_up = false;
  bool has_low = false;
  std::size_t up = 0;
  std::size_t low = 0;
  bool up_is_star = false;   // up move shrinks alpha* instead of growing alpha
  bool low_is_star = false;  // low move grows alpha* instead of shrinking alpha
  double m_up = 0.0;
  double m_low = 0.0;

  double violation() const { return m_up - m_low; }
};

// Maximal violating pair over the 2n box variables. For each point the
// "price" of raising beta_k is r_k - eps (via alpha) or r_k + eps (via
// alpha*); lowering it prices symmetrically. Optimality is
// max(up prices) <= min(low prices) and the bias sits between them.
PairChoice select_pair(const std::vector<double>& alpha, const std::vector<double>& astar,
                       const std::vector<double>& resid, double c, double eps) {
  PairChoice pc;
  pc.m_up = -std::numeric_limits<double>::infinity();
  pc.m_low = std::numeric_limits<double>::infinity();
  const std::size_t n = resid.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double r = resid[k];
    if (alpha[k] < c) {
      const double s = r - eps;
      if (s > pc.m_up) {
        pc.m_up = s;
        pc.up = k;
        pc.up_is_star = false;
        pc.has_up = true;
      }
    }
    if (astar[k] > 0.0) {
      const double s = r + eps;
      if (s > pc.m_up) {
        pc.m_up = s;
        pc.up = k;
        pc.up_is_star = true;
        pc.has_up = true;
      }
    }
    if (alpha[k] > 0.0) {
      const double s = r - eps;
      if (s < pc.m_low) {
        pc.m_low = s;
        pc.low = k;
        pc.low_is_star = false;
        pc.has_low = true;
      }
    }
    if (astar[k] < c) {
      const double s = r + eps;
      if (s < pc.m_low) {
        pc.m_low = s;
        pc.low = k;
        pc.low_is_star = true;
        pc.has_low = true;
      }
    }
  }
  return pc;
}

double dual_objective(const std::vector<double>& alpha, const std::vector<double>& astar,
                      const std::vector<double>& u, const std::vector<double>& y, double eps) {
  double w = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double beta = alpha[k] - astar[k];
    w += -0.5 * beta * u[k] - eps * (alpha[k] + astar[k]) + y[k] * beta;
  }
  return w;
}

}  // namespace

EmbeddedSet embed(std::span<const double> series, std::size_t lag) {
  if (lag < 1) throw std::invalid_argument("embed: lag must be >= 1");
  if (series.size() <= lag) {
    throw std::invalid_argument("embed: need more than lag=" + std::to_string(lag) +
                                " samples, got " + std::to_string(series.size()));
  }
  EmbeddedSet out;
  out.lag = lag;
  const std::size_t n = series.size() - lag;
  out.inputs.resize(n * lag);
  out.targets.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t j = 0; j < lag; ++j) out.inputs[p * lag + j] = series[p + j];
    out.targets[p] = series[p + lag];
  }
  return out;
}

SvrModel train_svr(const EmbeddedSet& data, const KernelSpec& kernel,
                   const SvrHyperparams& hp) {
  const std::size_t n = data.size();
  const std::size_t m = data.lag;
  if (n < 2) throw std::invalid_argument("train_svr: need at least 2 training pairs");
  if (data.inputs.size() != n * m) {
    throw std::invalid_argument("train_svr: inputs/targets size mismatch");
  }
  for (double v : data.inputs) {
    if (!std::isfinite(v)) throw std::invalid_argument("train_svr: non-finite input value");
  }
  for (double v : data.targets) {
    if (!std::isfinite(v)) throw std::invalid_argument("train_svr: non-finite target value");
  }
  validate_hyperparams(hp);
  const KernelSpec kp = resolve_kernel(kernel, m);

  const Scaling sc = compute_scaling(data);
  std::vector<double> xs(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      xs[i * m + j] = (data.inputs[i * m + j] - sc.x_mean[j]) / sc.x_spread[j];
    }
  }
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = (data.targets[i] - sc.y_mean) / sc.y_spread;

  RowCache cache(xs, n, m, kp);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = kernels::kernel_eval(kp, xs.data() + i * m, xs.data() + i * m, m);
  }

  const double c = hp.c;
  const double eps = hp.epsilon;
  std::vector<double> alpha(n, 0.0), astar(n, 0.0);
  std::vector<double> u(n, 0.0);  // u = K * beta
  std::vector<double> resid(ys);  // resid = ys - u

  SolverReport report;
  if (hp.record_trace) {
    report.objective_trace.push_back(dual_objective(alpha, astar, u, ys, eps));
  }

  const std::size_t max_updates = static_cast<std::size_t>(hp.max_iter) * n;
  std::size_t updates = 0;
  bool converged = false;
  while (updates < max_updates) {
    const PairChoice pc = select_pair(alpha, astar, resid, c, eps);
    if (!pc.has_up || !pc.has_low || pc.violation() < hp.tol) {
      converged = true;
      break;
    }
    const std::size_t i = pc.up;
    const std::size_t j = pc.low;
    const double* ki = cache.row(i);
    const double kij = ki[j];
    const double a2 = std::max(diag[i] + diag[j] - 2.0 * kij, 1e-12);

    double lambda = pc.violation() / a2;
    lambda = std::min(lambda, pc.up_is_star ? astar[i] : c - alpha[i]);
    lambda = std::min(lambda, pc.low_is_star ? c - astar[j] : alpha[j]);

    if (pc.up_is_star) {
      astar[i] = std::clamp(astar[i] - lambda, 0.0, c);
    } else {
      alpha[i] = std::clamp(alpha[i] + lambda, 0.0, c);
    }
    if (pc.low_is_star) {
      astar[j] = std::clamp(astar[j] + lambda, 0.0, c);
    } else {
      alpha[j] = std::clamp(alpha[j] - lambda, 0.0, c);
    }

    const double* kj = cache.row(j);
    for (std::size_t k = 0; k < n; ++k) {
      u[k] += lambda * (ki[k] - kj[k]);
      resid[k] = ys[k] - u[k];
    }
    ++updates;
    if (hp.record_trace && updates % n == 0) {
      report.objective_trace.push_back(dual_objective(alpha, astar, u, ys, eps));
    }
  }

  const PairChoice final_pc = select_pair(alpha, astar, resid, c, eps);
  report.converged = converged;
  report.updates = updates;
  report.kkt_violation =
      (final_pc.has_up && final_pc.has_low) ? std::max(0.0, final_pc.violation()) : 0.0;
  report.dual_objective = dual_objective(alpha, astar, u, ys, eps);
  if (hp.record_trace) report.objective_trace.push_back(report.dual_objective);

  // Bias from free support vectors; fall back to the midpoint of the final
  // optimality interval when every multiplier sits on a bound.
  double bias_norm = 0.0;
  std::size_t n_free = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (alpha[k] > 0.0 && alpha[k] < c) {
      bias_norm += resid[k] - eps;
      ++n_free;
    } else if (astar[k] > 0.0 && astar[k] < c) {
      bias_norm += resid[k] + eps;
      ++n_free;
    }
  }
  if (n_free > 0) {
    bias_norm /= static_cast<double>(n_free);
  } else if (final_pc.has_up && final_pc.has_low) {
    bias_norm = 0.5 * (final_pc.m_up + final_pc.m_low);
  }

  SvrModel model;
  model.input_dim = m;
  model.kernel = kp;
  model.hyperparams = hp;
  model.scaling = sc;
  model.report = std::move(report);
  model.bias = sc.y_mean + sc.y_spread * bias_norm;
  for (std::size_t k = 0; k < n; ++k) {
    const double beta = alpha[k] - astar[k];
    if (std::fabs(beta) < 1e-12) continue;
    model.dual_coefficients.push_back(beta);
    model.support_indices.push_back(k);
    model.support_vectors.insert(model.support_vectors.end(), xs.begin() + k * m,
                                 xs.begin() + (k + 1) * m);
  }
  return model;
}

double predict_svr(const SvrModel& model, std::span<const double> x) {
  const std::size_t m = model.input_dim;
  if (x.size() != m) {
    throw std::invalid_argument("predict_svr: expected input of length " + std::to_string(m) +
                                ", got " + std::to_string(x.size()));
  }
  std::vector<double> xn(m);
  for (std::size_t j = 0; j < m; ++j) {
    xn[j] = (x[j] - model.scaling.x_mean[j]) / model.scaling.x_spread[j];
  }
  double acc = 0.0;
  const std::size_t nsv = model.n_support();
  for (std::size_t i = 0; i < nsv; ++i) {
    acc += model.dual_coefficients[i] *
           kernels::kernel_eval(model.kernel, model.support_vectors.data() + i * m, xn.data(), m);
  }
  return model.scaling.y_spread * acc + model.bias;
}

std::vector<double> forecast_svr(const SvrModel& model, std::span<const double> history,
                                 std::size_t horizon) {
  const std::size_t m = model.input_dim;
  if (history.size() < m) {
    throw std::invalid_argument("forecast_svr: history shorter than embedding lag");
  }
  std::vector<double> window(history.end() - static_cast<std::ptrdiff_t>(m), history.end());
  std::vector<double> out;
  out.reserve(horizon);
  for (std::size_t h = 0; h < horizon; ++h) {
    const double z = predict_svr(model, window);
    window.erase(window.begin());
    window.push_back(z);
    out.push_back(z);
  }
  return out;
}

}  // namespace windcast::svr
