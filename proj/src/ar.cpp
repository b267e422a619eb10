#include "windcast/ar.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace windcast::ar {

namespace {

struct BurgState {
  std::vector<double> psi;       // current AR coefficients
  std::vector<double> energies;  // prediction error per order, energies[d] = E_d
  double mean = 0.0;
  bool degenerate = false;
};

// Order-recursive Burg lattice on the demeaned series. Runs up to
// `max_order` stages and records the prediction-error energy after each.
BurgState burg_recursion(std::span<const double> series, int max_order) {
  const std::size_t n = series.size();
  if (max_order < 1) throw std::invalid_argument("fit_burg: order must be >= 1");
  if (n < static_cast<std::size_t>(max_order) + 1) {
    throw std::invalid_argument("fit_burg: need at least order+1 samples, got " +
                                std::to_string(n));
  }

  BurgState st;
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  st.mean = mean;

  std::vector<double> x(n);
  double e0 = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    x[t] = series[t] - mean;
    e0 += x[t] * x[t];
  }
  e0 /= static_cast<double>(n);
  st.energies.assign(static_cast<std::size_t>(max_order) + 1, e0);

  if (e0 <= 1e-24 * (1.0 + mean * mean)) {
    st.degenerate = true;
    return st;
  }

  std::vector<double> f(x), b(x);
  std::vector<double> psi, prev;
  double energy = e0;
  for (int m = 1; m <= max_order; ++m) {
    double num = 0.0, den = 0.0;
    for (std::size_t t = m; t < n; ++t) {
      num += f[t] * b[t - 1];
      den += f[t] * f[t] + b[t - 1] * b[t - 1];
    }
    double k = 0.0;
    if (den > e0 * 1e-30) k = 2.0 * num / den;

    // Descending so b[t-1] is still the previous stage's value when read.
    for (std::size_t t = n - 1; t >= static_cast<std::size_t>(m); --t) {
      const double ft = f[t];
      const double bt = b[t - 1];
      f[t] = ft - k * bt;
      b[t] = bt - k * ft;
    }

    prev = psi;
    psi.resize(m);
    psi[m - 1] = k;
    for (int i = 0; i < m - 1; ++i) psi[i] = prev[i] - k * prev[m - 2 - i];

    energy *= (1.0 - k * k);
    st.energies[m] = energy;
  }
  st.psi = std::move(psi);
  return st;
}

}  // namespace

ArModel fit_burg(std::span<const double> series, int order) {
  BurgState st = burg_recursion(series, order);

  ArModel model;
  model.order = order;
  model.training_mean = st.mean;
  if (st.degenerate) {
    model.coefficients.assign(order, 0.0);
    model.intercept = st.mean;
    model.innovation_variance = 0.0;
    model.stationary = true;
    return model;
  }
  model.coefficients = st.psi;
  double coef_sum = 0.0;
  for (double c : model.coefficients) coef_sum += c;
  model.intercept = st.mean * (1.0 - coef_sum);
  model.innovation_variance = st.energies[static_cast<std::size_t>(order)];
  model.stationary = is_stationary(model.coefficients);
  return model;
}

int select_order(std::span<const double> series, int max_order) {
  const std::size_t n = series.size();
  if (max_order < 1) throw std::invalid_argument("select_order: max_order must be >= 1");
  if (2 * static_cast<std::size_t>(max_order) >= n) {
    throw std::invalid_argument("select_order: max_order must be below half the series length");
  }

  BurgState st = burg_recursion(series, max_order);
  if (st.degenerate) return 1;

  const double dn = static_cast<double>(n);
  int best = 1;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int d = 1; d <= max_order; ++d) {
    const double e = std::max(st.energies[static_cast<std::size_t>(d)], 1e-300);
    const double aic = dn * std::log(e) + 2.0 * d;
    if (aic < best_aic) {
      best_aic = aic;
      best = d;
    }
  }
  return best;
}

std::vector<double> forecast_ar(const ArModel& model, std::span<const double> history,
                                std::size_t horizon) {
  const std::size_t p = model.coefficients.size();
  if (history.size() < p) {
    throw std::invalid_argument("forecast_ar: history shorter than model order");
  }
  std::vector<double> ext(history.end() - static_cast<std::ptrdiff_t>(p), history.end());
  std::vector<double> out;
  out.reserve(horizon);
  for (std::size_t h = 0; h < horizon; ++h) {
    double y = model.intercept;
    const std::size_t m = ext.size();
    for (std::size_t i = 0; i < p; ++i) y += model.coefficients[i] * ext[m - 1 - i];
    ext.push_back(y);
    out.push_back(y);
  }
  return out;
}

bool is_stationary(std::span<const double> coefficients) {
  // Inverse Levinson recursion: peel each reflection coefficient off the
  // polynomial; the process is stationary iff all magnitudes stay below 1.
  std::vector<double> a(coefficients.begin(), coefficients.end());
  for (std::size_t m = a.size(); m >= 1; --m) {
    const double k = a[m - 1];
    if (!(std::fabs(k) < 1.0)) return false;
    if (m == 1) break;
    const double denom = 1.0 - k * k;
    std::vector<double> next(m - 1);
    for (std::size_t i = 0; i < m - 1; ++i) {
      next[i] = (a[i] + k * a[m - 2 - i]) / denom;
    }
    a = std::move(next);
  }
  return true;
}

}  // namespace windcast::ar
