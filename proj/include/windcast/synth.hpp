#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "windcast/timeseries.hpp"

namespace windcast::io {

enum class SynthKind { constant, ar, sine_plus_ar, mackey_glass };

SynthKind synth_kind_from_string(const std::string& name);
std::string to_string(SynthKind kind);

struct SynthParams {
  double value = 5.0;               // constant
  std::vector<double> phi = {0.6};  // ar coefficients; first entry drives sine_plus_ar noise
  double sigma = 1.0;               // innovation standard deviation
  double offset = 0.0;              // additive level for ar and sine_plus_ar
  double period = 288.0;            // sinusoid period in samples
  double amplitude = 1.0;
  double tau = 17.0;        // mackey_glass delay in model time units
  double mg_step = 1.0;     // model time units between output samples
  std::int64_t start = 1072915200;  // 2004-01-01T00:00:00Z
  std::int64_t interval = 600;
};

// Deterministic for a given seed. mackey_glass integrates the delay
// equation dx/dt = 0.2 x(t-tau) / (1 + x(t-tau)^10) - 0.1 x(t) with RK4 and
// uses no randomness at all.
TimeSeries synth_generate(SynthKind kind, const SynthParams& params, std::size_t n,
                          std::uint64_t seed);

}  // namespace windcast::io
