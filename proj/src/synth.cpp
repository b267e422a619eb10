#include "windcast/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "windcast/ar.hpp"
#include "windcast/rng.hpp"

namespace windcast::io {

namespace {

constexpr std::size_t kArBurnIn = 1000;

std::vector<double> ar_noise(const std::vector<double>& phi, double sigma, std::size_t n,
                             std::uint64_t seed) {
  if (phi.empty()) throw std::invalid_argument("synth: ar needs at least one coefficient");
  if (!ar::is_stationary(phi)) {
    throw std::invalid_argument("synth: ar coefficients must describe a stationary process");
  }
  if (sigma < 0.0) throw std::invalid_argument("synth: sigma must be >= 0");
  const std::size_t p = phi.size();
  Rng rng(seed);
  std::vector<double> x(kArBurnIn + p + n, 0.0);
  for (std::size_t t = p; t < x.size(); ++t) {
    double v = sigma * rng.normal();
    for (std::size_t i = 0; i < p; ++i) v += phi[i] * x[t - 1 - i];
    x[t] = v;
  }
  return {x.end() - static_cast<std::ptrdiff_t>(n), x.end()};
}

std::vector<double> mackey_glass(double tau, double step_per_sample, std::size_t n) {
  if (tau <= 0.0) throw std::invalid_argument("synth: tau must be positive");
  if (step_per_sample <= 0.0) throw std::invalid_argument("synth: mg_step must be positive");
  const double dt = 0.1;
  const std::size_t steps_per_sample =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(step_per_sample / dt)));
  const std::size_t delay_steps = static_cast<std::size_t>(std::llround(tau / dt));
  const std::size_t burn_steps = 10000;  // 1000 model time units

  // History ring: x at the current and previous delay_steps grid points.
  std::vector<double> hist(delay_steps + 1, 1.2);
  std::size_t head = 0;  // index of x(t)

  auto delayed = [&](double back_steps) {
    // Linear interpolation between the two grid points around t - back.
    const double fidx = back_steps;
    const std::size_t lo = static_cast<std::size_t>(fidx);
    const double frac = fidx - static_cast<double>(lo);
    const std::size_t m = hist.size();
    const double a = hist[(head + m - lo % m) % m];
    const double b = hist[(head + m - (lo + 1) % m) % m];
    return a * (1.0 - frac) + b * frac;
  };

  auto deriv = [](double x, double xd) {
    const double p = xd * xd;      // xd^2
    const double p4 = p * p;       // xd^4
    const double p10 = p4 * p4 * p;  // xd^10
    return 0.2 * xd / (1.0 + p10) - 0.1 * x;
  };

  std::vector<double> out;
  out.reserve(n);
  const double back = static_cast<double>(delay_steps);
  double x = 1.2;
  std::size_t produced = 0;
  std::size_t step = 0;
  while (produced < n) {
    if (step >= burn_steps && (step - burn_steps) % steps_per_sample == 0) {
      out.push_back(x);
      ++produced;
      if (produced == n) break;
    }
    const double xd0 = delayed(back);
    const double xdh = delayed(back - 0.5);
    const double xd1 = delayed(back - 1.0);
    const double k1 = deriv(x, xd0);
    const double k2 = deriv(x + 0.5 * dt * k1, xdh);
    const double k3 = deriv(x + 0.5 * dt * k2, xdh);
    const double k4 = deriv(x + dt * k3, xd1);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    head = (head + 1) % hist.size();
    hist[head] = x;
    ++step;
  }
  return out;
}

}  // namespace

SynthKind synth_kind_from_string(const std::string& name) {
  if (name == "constant") return SynthKind::constant;
  if (name == "ar") return SynthKind::ar;
  if (name == "sine_plus_ar") return SynthKind::sine_plus_ar;
  if (name == "mackey_glass") return SynthKind::mackey_glass;
  throw std::invalid_argument("unknown synth kind '" + name +
                              "' (expected constant, ar, sine_plus_ar or mackey_glass)");
}

std::string to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::constant:
      return "constant";
    case SynthKind::ar:
      return "ar";
    case SynthKind::sine_plus_ar:
      return "sine_plus_ar";
    case SynthKind::mackey_glass:
      return "mackey_glass";
  }
  return "constant";
}

TimeSeries synth_generate(SynthKind kind, const SynthParams& params, std::size_t n,
                          std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("synth: n must be >= 1");
  if (params.interval <= 0) throw std::invalid_argument("synth: interval must be positive");

  TimeSeries ts;
  ts.start = params.start;
  ts.interval = params.interval;

  switch (kind) {
    case SynthKind::constant:
      ts.values.assign(n, params.value);
      break;
    case SynthKind::ar: {
      ts.values = ar_noise(params.phi, params.sigma, n, seed);
      for (double& v : ts.values) v += params.offset;
      break;
    }
    case SynthKind::sine_plus_ar: {
      if (params.period <= 0.0) throw std::invalid_argument("synth: period must be positive");
      const std::vector<double> phi1 = {params.phi.empty() ? 0.6 : params.phi.front()};
      ts.values = ar_noise(phi1, params.sigma, n, seed);
      const double w = 2.0 * std::numbers::pi / params.period;
      for (std::size_t t = 0; t < n; ++t) {
        ts.values[t] += params.offset +
                        params.amplitude * std::sin(w * static_cast<double>(t));
      }
      break;
    }
    case SynthKind::mackey_glass:
      ts.values = mackey_glass(params.tau, params.mg_step, n);
      break;
  }
  return ts;
}

}  // namespace windcast::io
