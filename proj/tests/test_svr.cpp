#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "svr_oracle.hpp"
#include "windcast/svr.hpp"

using namespace windcast;

TEST_CASE("lag embedding slides one window per target") {
  const std::vector<double> y = {1, 2, 3, 4, 5};
  const auto set = svr::embed(y, 2);
  CHECK(set.lag == 2);
  REQUIRE(set.size() == 3);
  CHECK(set.inputs == std::vector<double>{1, 2, 2, 3, 3, 4});
  CHECK(set.targets == std::vector<double>{3, 4, 5});
}

TEST_CASE("constant targets need no support vectors") {
  svr::EmbeddedSet set;
  set.lag = 2;
  set.inputs = {1, 2, 2, 3, 3, 4};
  set.targets = {4.2, 4.2, 4.2};
  svr::SvrHyperparams hp;
  const auto m = svr::train_svr(set, svr::KernelSpec{}, hp);
  CHECK(m.report.converged);
  CHECK(m.report.updates == 0);
  CHECK(m.n_support() == 0);
  CHECK(m.bias == doctest::Approx(4.2).epsilon(1e-12));
  CHECK(m.report.dual_objective == 0.0);
  const std::vector<double> x = {9.0, 9.5};
  CHECK(svr::predict_svr(m, x) == doctest::Approx(4.2).epsilon(1e-12));
}

TEST_CASE("fits an exact line inside a narrow tube") {
  svr::EmbeddedSet set;
  set.lag = 1;
  for (int i = 0; i <= 10; ++i) {
    const double x = 0.1 * i;
    set.inputs.push_back(x);
    set.targets.push_back(2.0 * x + 1.0);
  }
  svr::KernelSpec kernel;
  kernel.kind = svr::KernelKind::linear;
  svr::SvrHyperparams hp;
  hp.c = 100.0;
  hp.epsilon = 0.01;
  hp.tol = 1e-5;
  const auto m = svr::train_svr(set, kernel, hp);
  CHECK(m.report.converged);
  for (std::size_t i = 0; i < set.size(); ++i) {
    CHECK(std::abs(svr::predict_svr(m, {&set.inputs[i], 1}) - set.targets[i]) <= 0.02);
  }
  const std::vector<double> mid = {0.5};
  CHECK(svr::predict_svr(m, mid) == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("trained dual objective matches the exhaustive reference solver") {
  for (auto kind : {kernels::KernelKind::linear, kernels::KernelKind::rbf}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      CAPTURE(static_cast<int>(kind));
      CAPTURE(seed);
      auto inst = svr_oracle::make_instance(kind, seed);
      inst.hp.record_trace = true;
      const auto m = svr::train_svr(svr_oracle::as_embedded(inst), inst.kernel, inst.hp);
      const double exact = svr_oracle::brute_force_objective(inst);
      CHECK(m.report.converged);
      CHECK(std::abs(m.report.dual_objective - exact) <= 1e-3);

      double coef_sum = 0;
      for (double b : m.dual_coefficients) {
        CHECK(std::abs(b) <= inst.hp.c + 1e-9);
        coef_sum += b;
      }
      CHECK(std::abs(coef_sum) <= 1e-9);

      const auto& trace = m.report.objective_trace;
      REQUIRE(!trace.empty());
      CHECK(trace.front() == 0.0);
      CHECK(trace.back() == m.report.dual_objective);
      for (std::size_t i = 1; i < trace.size(); ++i) {
        CHECK(trace[i] >= trace[i - 1] - 1e-9);
      }
    }
  }
}

TEST_CASE("training is equivariant under affine target maps") {
  auto inst = svr_oracle::make_instance(kernels::KernelKind::rbf, 5);
  const auto base = svr::train_svr(svr_oracle::as_embedded(inst), inst.kernel, inst.hp);

  auto shifted = inst;
  const double a = 3.5, b = -20.0;
  for (auto& t : shifted.targets) t = a * t + b;
  const auto m2 = svr::train_svr(svr_oracle::as_embedded(shifted), shifted.kernel, shifted.hp);

  std::vector<double> x(inst.dim);
  for (std::size_t j = 0; j < inst.dim; ++j) x[j] = inst.inputs[j] * 0.9;
  const double p1 = svr::predict_svr(base, x);
  const double p2 = svr::predict_svr(m2, x);
  CHECK(p2 == doctest::Approx(a * p1 + b).epsilon(1e-5));
}

TEST_CASE("training is equivariant under per-coordinate input maps") {
  auto inst = svr_oracle::make_instance(kernels::KernelKind::rbf, 6);
  const auto base = svr::train_svr(svr_oracle::as_embedded(inst), inst.kernel, inst.hp);

  auto warped = inst;
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.dim; ++j) {
      warped.inputs[i * inst.dim + j] = 2.0 * inst.inputs[i * inst.dim + j] + 7.0;
    }
  }
  const auto m2 = svr::train_svr(svr_oracle::as_embedded(warped), warped.kernel, warped.hp);

  std::vector<double> x(inst.dim), xw(inst.dim);
  for (std::size_t j = 0; j < inst.dim; ++j) {
    x[j] = inst.inputs[(inst.n - 1) * inst.dim + j] * 1.1;
    xw[j] = 2.0 * x[j] + 7.0;
  }
  CHECK(svr::predict_svr(m2, xw) == doctest::Approx(svr::predict_svr(base, x)).epsilon(1e-5));
}

TEST_CASE("learns a periodic cycle and continues it") {
  const std::vector<double> cycle = {10.0, 12.0, 11.0, 13.0};
  std::vector<double> y;
  for (int r = 0; r < 40; ++r) y.insert(y.end(), cycle.begin(), cycle.end());

  const auto set = svr::embed(y, 4);
  svr::KernelSpec kernel;  // rbf, gamma resolved to 1/lag
  svr::SvrHyperparams hp;
  hp.c = 10.0;
  hp.epsilon = 0.01;
  const auto m = svr::train_svr(set, kernel, hp);
  CHECK(m.kernel.gamma == doctest::Approx(0.25).epsilon(1e-15));

  const auto f = svr::forecast_svr(m, y, 8);
  REQUIRE(f.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(std::abs(f[k] - cycle[(y.size() + k) % 4]) <= 0.2);
  }
}

TEST_CASE("multi-step forecasting is the one-step predictor iterated") {
  auto inst = svr_oracle::make_instance(kernels::KernelKind::rbf, 9);
  const auto m = svr::train_svr(svr_oracle::as_embedded(inst), inst.kernel, inst.hp);

  std::vector<double> history = {0.3, -0.2, 0.9, 0.1, -0.5};
  const auto f = svr::forecast_svr(m, history, 6);
  REQUIRE(f.size() == 6);

  std::vector<double> window(history.end() - static_cast<long>(inst.dim), history.end());
  for (std::size_t k = 0; k < 6; ++k) {
    const double next = svr::predict_svr(m, window);
    CHECK(f[k] == next);
    window.erase(window.begin());
    window.push_back(next);
  }
}

TEST_CASE("a starved iteration budget reports non-convergence") {
  auto inst = svr_oracle::make_instance(kernels::KernelKind::linear, 2);
  inst.hp.max_iter = 1;
  inst.hp.tol = 1e-12;
  const auto m = svr::train_svr(svr_oracle::as_embedded(inst), inst.kernel, inst.hp);
  CHECK_FALSE(m.report.converged);
  CHECK(m.report.kkt_violation > 1e-12);
}

TEST_CASE("training and prediction reject bad input") {
  const std::vector<double> y = {1, 2, 3, 4};
  CHECK_THROWS_WITH_AS(svr::embed(y, 0), doctest::Contains("lag must be >= 1"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(svr::embed(y, 5),
                       doctest::Contains("need more than lag=5 samples, got 4"),
                       std::invalid_argument);

  svr::EmbeddedSet set;
  set.lag = 1;
  set.inputs = {1, 2, 3};
  set.targets = {1, 2, 3};
  svr::KernelSpec kernel;
  svr::SvrHyperparams hp;

  SUBCASE("bad hyperparameters") {
    auto bad = hp;
    bad.c = 0.0;
    CHECK_THROWS_WITH_AS(svr::train_svr(set, kernel, bad),
                         doctest::Contains("C must be positive"), std::invalid_argument);
    bad = hp;
    bad.epsilon = -0.1;
    CHECK_THROWS_WITH_AS(svr::train_svr(set, kernel, bad),
                         doctest::Contains("epsilon must be >= 0"), std::invalid_argument);
    bad = hp;
    bad.tol = 0.0;
    CHECK_THROWS_WITH_AS(svr::train_svr(set, kernel, bad),
                         doctest::Contains("tol must be positive"), std::invalid_argument);
    bad = hp;
    bad.max_iter = 0;
    CHECK_THROWS_WITH_AS(svr::train_svr(set, kernel, bad),
                         doctest::Contains("max_iter must be >= 1"), std::invalid_argument);
  }
  SUBCASE("bad kernel") {
    auto poly = kernel;
    poly.kind = svr::KernelKind::polynomial;
    poly.degree = 0;
    CHECK_THROWS_WITH_AS(svr::train_svr(set, poly, hp),
                         doctest::Contains("polynomial degree must be >= 1"),
                         std::invalid_argument);
  }
  SUBCASE("bad data") {
    svr::EmbeddedSet tiny;
    tiny.lag = 1;
    tiny.inputs = {1};
    tiny.targets = {1};
    CHECK_THROWS_WITH_AS(svr::train_svr(tiny, kernel, hp),
                         doctest::Contains("need at least 2 training pairs"),
                         std::invalid_argument);
    auto nan_set = set;
    nan_set.inputs[1] = std::nan("");
    CHECK_THROWS_WITH_AS(svr::train_svr(nan_set, kernel, hp),
                         doctest::Contains("non-finite input value"), std::invalid_argument);
  }
  SUBCASE("shape mismatches at prediction time") {
    const auto m = svr::train_svr(set, kernel, hp);
    const std::vector<double> wide = {1.0, 2.0};
    CHECK_THROWS_WITH_AS(svr::predict_svr(m, wide),
                         doctest::Contains("expected input of length 1, got 2"),
                         std::invalid_argument);
    const std::vector<double> empty;
    CHECK_THROWS_WITH_AS(svr::forecast_svr(m, empty, 1),
                         doctest::Contains("history shorter than embedding lag"),
                         std::invalid_argument);
  }
}
