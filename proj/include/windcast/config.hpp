#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace windcast::config {

// Raised for unknown keys or out-of-domain values; the CLI maps it to a
// usage error (exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string filter = "db4";
  int levels = 9;  // 0 disables decomposition (single model on the raw series)
  std::string boundary = "reflect";
  int split_level = 4;
  std::string smooth_model = "svr";
  int ar_order = 0;  // 0 selects by AIC
  int ar_max_order = 24;
  std::string svr_kernel = "rbf";
  double svr_c = 1.0;
  double svr_epsilon = 0.05;
  double svr_gamma = 0.0;  // <= 0 resolves to 1/lag
  int svr_degree = 3;
  double svr_coef0 = 0.0;
  std::size_t svr_lag = 12;
  double svr_tol = 1e-3;
  int svr_max_iter = 10000;
  std::size_t horizon = 36;
  std::size_t stride = 1008;
  std::string training_window = "first-month";  // or a positive sample count
  std::size_t history_window = 2048;
  std::uint64_t seed = 0;
};

using KeyValues = std::map<std::string, std::string>;

// Flat `key = value` lines; '#' starts a comment; unknown keys are the
// caller's problem (rejected during resolve).
KeyValues parse_config_file(const std::string& text, const std::string& path);

// Defaults, overlaid by file values, overlaid by flag values. The seed
// falls back to the WINDCAST_SEED environment variable when neither source
// names it. Every value is validated per key; unknown keys raise
// ConfigError.
RunConfig resolve_config(const KeyValues& file_values, const KeyValues& flag_values);

// Cross-field check used by the paths that build a band assignment.
void validate_assignment(const RunConfig& cfg);

}  // namespace windcast::config
