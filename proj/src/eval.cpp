#include "windcast/eval.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include "windcast/io_util.hpp"

namespace windcast::eval {

namespace {

std::vector<std::size_t> plan_origins(const io::TimeSeries& series, const EvalConfig& cfg) {
  if (cfg.horizon < 1) throw std::invalid_argument("evaluate: horizon must be >= 1");
  if (cfg.stride < 1) throw std::invalid_argument("evaluate: stride must be >= 1");
  if (cfg.training_samples < 1) {
    throw std::invalid_argument("evaluate: training_samples must be set");
  }
  const std::size_t n = series.size();
  if (cfg.training_samples + cfg.horizon > n) {
    throw std::invalid_argument("evaluate: series too short for one origin (need " +
                                std::to_string(cfg.training_samples + cfg.horizon) +
                                " samples, have " + std::to_string(n) + ")");
  }
  std::vector<std::size_t> origins;
  for (std::size_t o = cfg.training_samples; o + cfg.horizon <= n; o += cfg.stride) {
    origins.push_back(o);
  }
  return origins;
}

bool overlaps_gap(const io::TimeSeries& series, std::size_t begin, std::size_t end) {
  for (const auto& g : series.gaps) {
    if (g.first < end && begin <= g.last) return true;
  }
  return false;
}

// Evaluates one recipe over a fixed origin grid. Forecast traces for
// `trace_origin` are appended when `trace` is non-null.
std::vector<MetricsRow> evaluate_origins(const io::TimeSeries& series, const Recipe& recipe,
                                         const EvalConfig& cfg,
                                         const std::vector<std::size_t>& origins,
                                         std::vector<TraceRow>* trace) {
  if (!recipe.fit) throw std::invalid_argument("evaluate: recipe '" + recipe.name + "' has no fit");

  Forecaster shared;
  if (!cfg.refit_per_origin) {
    shared = recipe.fit(series, 0, cfg.training_samples);
  }

  const std::size_t n_origins = origins.size();
  std::vector<MetricsRow> rows(n_origins);
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic) if (!cfg.refit_per_origin && n_origins > 1)
  for (std::int64_t oi = 0; oi < static_cast<std::int64_t>(n_origins); ++oi) {
    MetricsRow& row = rows[oi];
    try {
      const std::size_t origin = origins[oi];
      row.origin_index = origin;
      row.origin_time = series.time_at(origin);
      row.horizon = cfg.horizon;
      if (overlaps_gap(series, origin, origin + cfg.horizon)) {
        row.skipped = true;
        row.rmse = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      Forecaster local;
      const Forecaster& forecaster =
          cfg.refit_per_origin
              ? (local = recipe.fit(series, origin - cfg.training_samples, origin))
              : shared;
      const std::size_t hist = std::min(origin, cfg.history_window);
      const std::span<const double> history(series.values.data() + (origin - hist), hist);
      const std::vector<double> predicted = forecaster(history, origin, cfg.horizon);
      if (predicted.size() != cfg.horizon) {
        throw std::runtime_error("recipe '" + recipe.name + "' returned " +
                                 std::to_string(predicted.size()) + " values for horizon " +
                                 std::to_string(cfg.horizon));
      }
      const std::span<const double> actual(series.values.data() + origin, cfg.horizon);
      row.rmse = rmse(actual, predicted);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  if (trace) {
    if (cfg.trace_origin >= n_origins) {
      throw std::invalid_argument("evaluate: trace_origin " + std::to_string(cfg.trace_origin) +
                                  " out of range (have " + std::to_string(n_origins) +
                                  " origins)");
    }
    const std::size_t origin = origins[cfg.trace_origin];
    Forecaster local;
    const Forecaster& forecaster =
        cfg.refit_per_origin ? (local = recipe.fit(series, origin - cfg.training_samples, origin))
                             : shared;
    const std::size_t hist = std::min(origin, cfg.history_window);
    const std::span<const double> history(series.values.data() + (origin - hist), hist);
    const std::vector<double> predicted = forecaster(history, origin, cfg.horizon);
    for (std::size_t h = 0; h < cfg.horizon && h < predicted.size(); ++h) {
      TraceRow tr;
      tr.time = series.time_at(origin + h);
      tr.actual = series.values[origin + h];
      tr.predicted = predicted[h];
      tr.model = recipe.name;
      trace->push_back(tr);
    }
  }
  return rows;
}

double sample_sd(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace

double rmse(std::span<const double> actual, std::span<const double> predicted) {
  if (actual.empty()) throw std::invalid_argument("rmse: empty input");
  if (actual.size() != predicted.size()) {
    throw std::invalid_argument("rmse: length mismatch (" + std::to_string(actual.size()) +
                                " vs " + std::to_string(predicted.size()) + ")");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (!std::isfinite(actual[i]) || !std::isfinite(predicted[i])) {
      throw std::invalid_argument("rmse: non-finite value at index " + std::to_string(i));
    }
    const double d = actual[i] - predicted[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(actual.size()));
}

std::vector<MetricsRow> rolling_evaluate(const io::TimeSeries& series, const Recipe& recipe,
                                         const EvalConfig& cfg, std::vector<TraceRow>* trace) {
  const auto origins = plan_origins(series, cfg);
  return evaluate_origins(series, recipe, cfg, origins, trace);
}

Summary summarize(const std::vector<MetricsRow>& rows, const std::string& model) {
  std::vector<double> values;
  values.reserve(rows.size());
  for (const auto& r : rows) {
    if (!r.skipped) values.push_back(r.rmse);
  }
  if (values.empty()) throw std::invalid_argument("summarize: no non-skipped rows");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());

  Summary s;
  s.model = model;
  s.mean_rmse = mean;
  s.standard_error = sample_sd(values, mean) / std::sqrt(static_cast<double>(values.size()));
  s.n_origins = values.size();
  return s;
}

ComparisonResult compare(const io::TimeSeries& series, std::span<const Recipe> recipes,
                         const EvalConfig& cfg) {
  if (recipes.size() < 2) throw std::invalid_argument("compare: need at least 2 recipes");
  const auto origins = plan_origins(series, cfg);
  ComparisonResult result;
  for (const auto& recipe : recipes) {
    auto rows = evaluate_origins(series, recipe, cfg, origins, &result.trace);
    result.summaries.push_back(summarize(rows, recipe.name));
    result.metrics.emplace_back(recipe.name, std::move(rows));
  }
  return result;
}

void write_metrics_csv(const std::string& path,
                       const std::vector<std::pair<std::string, std::vector<MetricsRow>>>& rows) {
  std::string out = "origin_time,origin_index,horizon,model,rmse\n";
  for (const auto& [model, metrics] : rows) {
    for (const auto& r : metrics) {
      out += io::format_iso8601_utc(r.origin_time);
      out += ',';
      out += std::to_string(r.origin_index);
      out += ',';
      out += std::to_string(r.horizon);
      out += ',';
      out += model;
      out += ',';
      out += ioutil::fmt17(r.rmse);
      out += '\n';
    }
  }
  ioutil::atomic_write_text(path, out);
}

void write_summary_csv(const std::string& path, const std::vector<Summary>& summaries) {
  std::string out = "model,mean_rmse,standard_error,n_origins\n";
  for (const auto& s : summaries) {
    out += s.model;
    out += ',';
    out += ioutil::fmt17(s.mean_rmse);
    out += ',';
    out += ioutil::fmt17(s.standard_error);
    out += ',';
    out += std::to_string(s.n_origins);
    out += '\n';
  }
  ioutil::atomic_write_text(path, out);
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows) {
  std::string out = "time,actual,predicted,model\n";
  for (const auto& r : rows) {
    out += io::format_iso8601_utc(r.time);
    out += ',';
    out += ioutil::fmt17(r.actual);
    out += ',';
    out += ioutil::fmt17(r.predicted);
    out += ',';
    out += r.model;
    out += '\n';
  }
  ioutil::atomic_write_text(path, out);
}

}  // namespace windcast::eval
