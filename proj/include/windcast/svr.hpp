#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "windcast/kernels.hpp"

namespace windcast::svr {

using KernelKind = kernels::KernelKind;
using KernelSpec = kernels::KernelParams;

struct SvrHyperparams {
  double c = 1.0;
  double epsilon = 0.05;
  double tol = 1e-3;
  int max_iter = 10000;       // sweeps; one sweep is up to n pairwise updates
  bool record_trace = false;  // keep per-sweep dual objective values
};

// Per-coordinate affine normalization applied to inputs and targets before
// training and inverted at prediction time.
struct Scaling {
  std::vector<double> x_mean;
  std::vector<double> x_spread;
  double y_mean = 0.0;
  double y_spread = 1.0;
};

struct SolverReport {
  bool converged = false;
  std::size_t updates = 0;
  double kkt_violation = 0.0;
  double dual_objective = 0.0;
  std::vector<double> objective_trace;  // filled when record_trace is set
};

struct SvrModel {
  std::vector<double> support_vectors;  // flat row-major, normalized space
  std::vector<double> dual_coefficients;
  std::vector<std::size_t> support_indices;  // positions in the training set
  double bias = 0.0;                         // output units
  std::size_t input_dim = 0;
  KernelSpec kernel;  // gamma resolved to its effective value
  SvrHyperparams hyperparams;
  Scaling scaling;
  SolverReport report;

  std::size_t n_support() const { return dual_coefficients.size(); }
};

// Lag embedding of a series: row t-m of inputs is (y_{t-m}, ..., y_{t-1})
// and the matching target is y_t.
struct EmbeddedSet {
  std::size_t lag = 0;
  std::vector<double> inputs;  // flat row-major, size() x lag
  std::vector<double> targets;

  std::size_t size() const { return targets.size(); }
};

EmbeddedSet embed(std::span<const double> series, std::size_t lag);

// Trains by pairwise coordinate ascent on the epsilon-insensitive dual:
// maximize -1/2 b'Kb - eps*sum(a+a*) + y'b over a, a* in [0, C] with
// sum(b) = 0, b = a - a*. Selection takes the maximal violating pair,
// ties to the lowest index, so training is deterministic.
SvrModel train_svr(const EmbeddedSet& data, const KernelSpec& kernel,
                   const SvrHyperparams& hp);

double predict_svr(const SvrModel& model, std::span<const double> x);

// Recursive multi-step forecast: predict one step, append, slide the window.
std::vector<double> forecast_svr(const SvrModel& model, std::span<const double> history,
                                 std::size_t horizon);

}  // namespace windcast::svr
