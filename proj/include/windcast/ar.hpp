#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace windcast::ar {

// Autoregressive model y_t = intercept + sum_i coefficients[i] * y_{t-i-1} + e_t.
struct ArModel {
  int order = 0;
  std::vector<double> coefficients;
  double intercept = 0.0;
  double innovation_variance = 0.0;
  double training_mean = 0.0;
  bool stationary = true;
};

// Burg (maximum entropy) estimate of an AR(p) model. The series is demeaned
// before the lattice recursion and the mean folded back into the intercept.
ArModel fit_burg(std::span<const double> series, int order);

// Order chosen by AIC over 1..max_order using the Burg prediction-error
// sequence from a single order-recursive pass. Ties go to the smaller order.
int select_order(std::span<const double> series, int max_order);

// Iterated one-step forecasts from the end of `history`.
std::vector<double> forecast_ar(const ArModel& model, std::span<const double> history,
                                std::size_t horizon);

// True when every reflection coefficient recovered from the AR polynomial
// has magnitude below one.
bool is_stationary(std::span<const double> coefficients);

}  // namespace windcast::ar
