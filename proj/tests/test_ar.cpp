#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include "windcast/ar.hpp"
#include "windcast/rng.hpp"
#include "windcast/synth.hpp"

using namespace windcast;

namespace {

// AR(2) with coefficients (0.75, -0.5), unit innovations, long burn-in.
std::vector<double> seeded_ar2(std::size_t n, std::uint64_t seed, double mean = 0.0) {
  io::SynthParams p;
  p.phi = {0.75, -0.5};
  p.sigma = 1.0;
  p.offset = mean;
  return io::synth_generate(io::SynthKind::ar, p, n, seed).values;
}

// A sampled damped sinusoid is the noise-free trajectory of an AR(2) with
// conjugate poles at radius rho and angle w. With rho this close to one the
// signal persists across the whole window instead of decaying into rounding
// noise, and the window length is a whole number of oscillation periods so
// the estimate is not perturbed by partial cycles at the edges.
std::vector<double> noiseless_ar2(double& psi1, double& psi2) {
  const double rho = 1.0 - 1e-9;
  const double w = 2.0 * std::numbers::pi / 12.0;
  psi1 = 2.0 * rho * std::cos(w);
  psi2 = -rho * rho;
  const std::size_t n = 2401;
  std::vector<double> z(n);
  const double phase = 0.3;
  z[0] = std::cos(phase);
  z[1] = rho * std::cos(w + phase);
  for (std::size_t t = 2; t < n; ++t) z[t] = psi1 * z[t - 1] + psi2 * z[t - 2];
  return z;
}

}  // namespace

TEST_CASE("recovers AR(2) coefficients from a long noisy realization") {
  const auto z = seeded_ar2(10000, 42);
  const auto m = ar::fit_burg(z, 2);
  REQUIRE(m.order == 2);
  CHECK(std::abs(m.coefficients[0] - 0.75) <= 0.03);
  CHECK(std::abs(m.coefficients[1] + 0.5) <= 0.03);
  CHECK(m.stationary);
  CHECK(m.innovation_variance == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("recovers a noise-free AR(2) to near machine precision") {
  double psi1 = 0, psi2 = 0;
  const auto z = noiseless_ar2(psi1, psi2);
  const auto m = ar::fit_burg(z, 2);
  CHECK(std::abs(m.coefficients[0] - psi1) <= 1e-6);
  CHECK(std::abs(m.coefficients[1] - psi2) <= 1e-6);
  CHECK(m.innovation_variance <= 1e-6);
}

TEST_CASE("order selection picks 2 for an AR(2) process") {
  const auto z = seeded_ar2(10000, 43);
  CHECK(ar::select_order(z, 12) == 2);
}

TEST_CASE("order selection on white noise finds nothing worth modeling") {
  Rng rng(7);
  std::vector<double> z(20000);
  for (auto& x : z) x = rng.normal();
  // AIC occasionally admits a spurious lag or two on pure noise, but any
  // coefficient it keeps must be negligible.
  const int order = ar::select_order(z, 10);
  CHECK(order <= 3);
  const auto m = ar::fit_burg(z, order);
  for (const double c : m.coefficients) CHECK(std::abs(c) <= 0.05);
}

TEST_CASE("coefficients are invariant under a mean shift") {
  const auto z0 = seeded_ar2(5000, 44);
  std::vector<double> z1(z0);
  const double shift = 123.456;
  for (auto& x : z1) x += shift;
  const auto m0 = ar::fit_burg(z0, 2);
  const auto m1 = ar::fit_burg(z1, 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(m0.coefficients[i] - m1.coefficients[i]) <= 1e-9);
  }
  // intercept c = mean (1 - sum psi), so it shifts with the mean
  const double sum_psi = m1.coefficients[0] + m1.coefficients[1];
  const double expected = m0.intercept + shift * (1.0 - sum_psi);
  CHECK(m1.intercept == doctest::Approx(expected).epsilon(1e-6));
  CHECK(m1.training_mean == doctest::Approx(m0.training_mean + shift).epsilon(1e-12));
}

TEST_CASE("reflection structure keeps estimated models stationary") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto z = seeded_ar2(3000, seed);
    const auto m = ar::fit_burg(z, 8);
    CHECK(m.stationary);
    CHECK(ar::is_stationary(m.coefficients));
  }
  SUBCASE("an explosive polynomial is flagged") {
    const std::vector<double> psi = {1.2};
    CHECK_FALSE(ar::is_stationary(psi));
  }
  SUBCASE("an empty polynomial is stationary") {
    CHECK(ar::is_stationary({}));
  }
}

TEST_CASE("a constant series degenerates to an intercept-only model") {
  const std::vector<double> z(50, 4.2);
  const auto m = ar::fit_burg(z, 3);
  for (double c : m.coefficients) CHECK(c == 0.0);
  CHECK(m.intercept == doctest::Approx(4.2).epsilon(1e-12));
  CHECK(m.innovation_variance == 0.0);
  CHECK(m.stationary);
  CHECK(ar::select_order(z, 5) == 1);

  const auto f = ar::forecast_ar(m, z, 4);
  for (double v : f) CHECK(v == doctest::Approx(4.2).epsilon(1e-12));
}

TEST_CASE("forecast iteration matches hand computation") {
  SUBCASE("halving recursion") {
    ar::ArModel m;
    m.order = 1;
    m.coefficients = {0.5};
    const std::vector<double> h = {9.0, 4.0};
    const auto f = ar::forecast_ar(m, h, 3);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == 2.0);
    CHECK(f[1] == 1.0);
    CHECK(f[2] == 0.5);
  }
  SUBCASE("intercept only") {
    ar::ArModel m;
    m.order = 1;
    m.coefficients = {0.0};
    m.intercept = 7.0;
    const std::vector<double> h = {1.0};
    const auto f = ar::forecast_ar(m, h, 2);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == 7.0);
    CHECK(f[1] == 7.0);
  }
  SUBCASE("second order uses its own forecasts recursively") {
    ar::ArModel m;
    m.order = 2;
    m.coefficients = {0.75, -0.5};
    const std::vector<double> h = {1.0, 2.0};
    const auto f = ar::forecast_ar(m, h, 2);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == 0.75 * 2.0 - 0.5 * 1.0);   // 1.0
    CHECK(f[1] == 0.75 * 1.0 - 0.5 * 2.0);   // -0.25
  }
  SUBCASE("zero horizon yields an empty forecast") {
    ar::ArModel m;
    m.order = 1;
    m.coefficients = {0.5};
    const std::vector<double> h = {1.0};
    CHECK(ar::forecast_ar(m, h, 0).empty());
  }
}

TEST_CASE("estimation and forecasting reject bad input") {
  const std::vector<double> z = {1.0, 2.0, 3.0};
  CHECK_THROWS_WITH_AS(ar::fit_burg(z, 0),
                       doctest::Contains("order must be >= 1"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(ar::fit_burg(z, 3),
                       doctest::Contains("need at least order+1 samples"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(ar::select_order(z, 0),
                       doctest::Contains("max_order must be >= 1"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(ar::select_order(z, 2),
                       doctest::Contains("below half the series length"), std::invalid_argument);

  ar::ArModel m;
  m.order = 2;
  m.coefficients = {0.5, 0.1};
  const std::vector<double> short_history = {1.0};
  CHECK_THROWS_WITH_AS(ar::forecast_ar(m, short_history, 1),
                       doctest::Contains("history shorter than model order"),
                       std::invalid_argument);
}
