#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "windcast/timeseries.hpp"

namespace windcast::eval {

// Root mean squared error over a forecast window.
double rmse(std::span<const double> actual, std::span<const double> predicted);

// A fitted forecaster. The harness hands it a history view that ends at the
// forecast origin, plus the origin's sample index so test doubles can check
// exactly which samples were visible.
using Forecaster = std::function<std::vector<double>(
    std::span<const double> history, std::size_t origin_index, std::size_t horizon)>;

// Named model builder. fit() sees the samples in [train_begin, train_end)
// of the full series.
struct Recipe {
  std::string name;
  std::function<Forecaster(const io::TimeSeries& series, std::size_t train_begin,
                           std::size_t train_end)>
      fit;
};

struct EvalConfig {
  std::size_t horizon = 36;
  std::size_t stride = 1008;
  std::size_t training_samples = 0;  // required; callers resolve "first month" to a count
  std::size_t history_window = 2048;
  bool refit_per_origin = false;  // refit on the trailing training_samples before each origin
  std::size_t trace_origin = 0;   // ordinal into the origin list (compare only)
};

struct MetricsRow {
  std::size_t origin_index = 0;
  std::int64_t origin_time = 0;
  std::size_t horizon = 0;
  double rmse = 0.0;
  bool skipped = false;  // actuals in the horizon overlap an interpolated gap
};

struct Summary {
  std::string model;
  double mean_rmse = 0.0;
  double standard_error = 0.0;
  std::size_t n_origins = 0;
};

struct TraceRow {
  std::int64_t time = 0;
  double actual = 0.0;
  double predicted = 0.0;
  std::string model;
};

struct ComparisonResult {
  std::vector<std::pair<std::string, std::vector<MetricsRow>>> metrics;
  std::vector<Summary> summaries;
  std::vector<TraceRow> trace;
};

// Fits once on [0, training_samples) (or per origin when refit_per_origin),
// then forecasts at origins training_samples + i*stride for every i with
// the full horizon inside the series. When `trace` is given, the per-step
// forecast at the trace_origin-th origin is appended to it.
std::vector<MetricsRow> rolling_evaluate(const io::TimeSeries& series, const Recipe& recipe,
                                         const EvalConfig& cfg,
                                         std::vector<TraceRow>* trace = nullptr);

Summary summarize(const std::vector<MetricsRow>& rows, const std::string& model);

// Runs every recipe over the identical origin grid and captures the
// per-step forecast trace at the trace_origin-th origin.
ComparisonResult compare(const io::TimeSeries& series, std::span<const Recipe> recipes,
                         const EvalConfig& cfg);

void write_metrics_csv(const std::string& path,
                       const std::vector<std::pair<std::string, std::vector<MetricsRow>>>& rows);
void write_summary_csv(const std::string& path, const std::vector<Summary>& summaries);
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows);

}  // namespace windcast::eval
