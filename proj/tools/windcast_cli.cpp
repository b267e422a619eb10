#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "windcast/config.hpp"
#include "windcast/eval.hpp"
#include "windcast/hybrid.hpp"
#include "windcast/io_util.hpp"
#include "windcast/model_io.hpp"
#include "windcast/parallel.hpp"
#include "windcast/pipeline.hpp"
#include "windcast/synth.hpp"
#include "windcast/timeseries.hpp"

namespace {

using windcast::config::KeyValues;
using windcast::config::RunConfig;

struct Common {
  std::string config_path;
  KeyValues flags;
  int threads = 0;
};

// Every model/eval knob is declared as a string option that lands in the
// override map, so the config module does all parsing and validation and
// the precedence rule (flag > file > default) holds for every key.
void add_config_flags(CLI::App* cmd, Common& common) {
  cmd->add_option("--config", common.config_path, "key = value config file");
  cmd->add_option("--threads", common.threads, "cap OpenMP thread count");
  const std::vector<std::pair<std::string, std::string>> keys = {
      {"--filter", "filter"},
      {"--levels", "levels"},
      {"--boundary", "boundary"},
      {"--split-level", "split_level"},
      {"--smooth-model", "smooth_model"},
      {"--ar-order", "ar_order"},
      {"--ar-max-order", "ar_max_order"},
      {"--svr-kernel", "svr_kernel"},
      {"--svr-c", "svr_c"},
      {"--svr-epsilon", "svr_epsilon"},
      {"--svr-gamma", "svr_gamma"},
      {"--svr-degree", "svr_degree"},
      {"--svr-coef0", "svr_coef0"},
      {"--svr-lag", "svr_lag"},
      {"--svr-tol", "svr_tol"},
      {"--svr-max-iter", "svr_max_iter"},
      {"--horizon", "horizon"},
      {"--stride", "stride"},
      {"--training-window", "training_window"},
      {"--history-window", "history_window"},
      {"--seed", "seed"},
  };
  for (const auto& [flag, key] : keys) {
    cmd->add_option_function<std::string>(
        flag, [&common, key = key](const std::string& v) { common.flags[key] = v; },
        "config key " + key);
  }
}

RunConfig resolve(const Common& common) {
  KeyValues file_kv;
  if (!common.config_path.empty()) {
    file_kv = windcast::config::parse_config_file(windcast::ioutil::read_text(common.config_path),
                                                  common.config_path);
  }
  RunConfig cfg = windcast::config::resolve_config(file_kv, common.flags);
  if (common.threads > 0) windcast::set_threads(common.threads);
  return cfg;
}

std::vector<double> split_doubles(const std::string& text, const std::string& context) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string tok =
        comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
    out.push_back(windcast::ioutil::parse_double(tok, context));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(text.substr(pos));
      break;
    }
    out.push_back(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

void write_components_csv(const windcast::io::TimeSeries& ts,
                          const windcast::wavelet::Decomposition& d, const std::string& path) {
  std::string out = "time,index";
  for (std::size_t j = 1; j <= d.details.size(); ++j) out += ",d" + std::to_string(j);
  out += ",smooth\n";
  for (std::size_t i = 0; i < d.smooth.size(); ++i) {
    out += windcast::io::format_iso8601_utc(ts.time_at(i));
    out += ',';
    out += std::to_string(i);
    for (const auto& detail : d.details) {
      out += ',';
      out += windcast::ioutil::fmt17(detail[i]);
    }
    out += ',';
    out += windcast::ioutil::fmt17(d.smooth[i]);
    out += '\n';
  }
  windcast::ioutil::atomic_write_text(path, out);
}

std::string model_label(const windcast::hybrid::HybridModel& model) {
  if (model.spec.levels > 0) return "hybrid";
  return windcast::hybrid::to_string(model.assignment.smooth);
}

void write_forecast_csv(const windcast::io::TimeSeries& history,
                        const std::vector<double>& forecast, const std::string& label,
                        const std::string& path) {
  std::string out = "time,predicted,model\n";
  for (std::size_t h = 0; h < forecast.size(); ++h) {
    out += windcast::io::format_iso8601_utc(history.time_at(history.size() + h));
    out += ',';
    out += windcast::ioutil::fmt17(forecast[h]);
    out += ',';
    out += label;
    out += '\n';
  }
  windcast::ioutil::atomic_write_text(path, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"windcast: wavelet-band hybrid AR/SVR wind-speed forecasting"};
  app.require_subcommand(1);
  std::function<void()> action;

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic series CSV");
  Common synth_common;
  struct {
    std::string kind = "constant";
    std::size_t n = 0;
    std::string output;
    std::string phi;
    std::string start = "2004-01-01T00:00:00Z";
    windcast::io::SynthParams params;
  } sy;
  synth->add_option("--kind", sy.kind, "constant | ar | sine_plus_ar | mackey_glass")
      ->required();
  synth->add_option("-n,--samples", sy.n, "number of samples")->required();
  synth->add_option("-o,--output", sy.output, "output CSV path")->required();
  synth->add_option("--value", sy.params.value, "constant level");
  synth->add_option("--phi", sy.phi, "AR coefficients, comma separated");
  synth->add_option("--sigma", sy.params.sigma, "innovation standard deviation");
  synth->add_option("--offset", sy.params.offset, "additive level");
  synth->add_option("--period", sy.params.period, "sinusoid period in samples");
  synth->add_option("--amplitude", sy.params.amplitude, "sinusoid amplitude");
  synth->add_option("--tau", sy.params.tau, "chaotic delay (model time units)");
  synth->add_option("--mg-step", sy.params.mg_step, "model time units per sample");
  synth->add_option("--start", sy.start, "first timestamp (ISO-8601 UTC)");
  synth->add_option("--interval", sy.params.interval, "sample interval in seconds");
  add_config_flags(synth, synth_common);
  synth->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(synth_common);
      if (!sy.phi.empty()) sy.params.phi = split_doubles(sy.phi, "--phi");
      sy.params.start = windcast::io::parse_iso8601_utc(sy.start);
      const auto kind = windcast::io::synth_kind_from_string(sy.kind);
      const auto ts = windcast::io::synth_generate(kind, sy.params, sy.n, cfg.seed);
      windcast::io::write_csv(ts, sy.output);
    };
  });

  // decompose
  auto* decompose = app.add_subcommand("decompose", "write per-component CSV");
  Common dec_common;
  struct {
    std::string input;
    std::string output;
    std::string gap_policy = "error";
    std::int64_t interval = 600;
  } dc;
  decompose->add_option("-i,--input", dc.input, "input series CSV")->required();
  decompose->add_option("-o,--output", dc.output, "components CSV path")->required();
  decompose->add_option("--gap-policy", dc.gap_policy, "error | split-at-gap");
  decompose->add_option("--interval", dc.interval, "sample interval in seconds");
  add_config_flags(decompose, dec_common);
  decompose->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(dec_common);
      const auto ts = windcast::io::load_csv(
          dc.input, dc.interval, windcast::io::gap_policy_from_string(dc.gap_policy));
      const auto spec = windcast::pipeline::decomposition_spec(cfg);
      const auto d = windcast::wavelet::decompose(ts.values, spec);
      write_components_csv(ts, d, dc.output);
    };
  });

  // fit
  auto* fit = app.add_subcommand("fit", "fit a model on the training window");
  Common fit_common;
  struct {
    std::string input;
    std::string output;
    std::string gap_policy = "error";
    std::int64_t interval = 600;
  } ft;
  fit->add_option("-i,--input", ft.input, "input series CSV")->required();
  fit->add_option("-o,--output", ft.output, "model file path")->required();
  fit->add_option("--gap-policy", ft.gap_policy, "error | split-at-gap");
  fit->add_option("--interval", ft.interval, "sample interval in seconds");
  add_config_flags(fit, fit_common);
  fit->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(fit_common);
      const auto ts = windcast::io::load_csv(
          ft.input, ft.interval, windcast::io::gap_policy_from_string(ft.gap_policy));
      const std::size_t train = windcast::pipeline::resolve_training_samples(ts, cfg);
      const std::span<const double> training(ts.values.data(), train);
      auto model = windcast::pipeline::fit_from_config(training, cfg);
      model.training_start = ts.start;
      windcast::model_io::save_model(model, ft.output);
    };
  });

  // forecast
  auto* forecast = app.add_subcommand("forecast", "forecast from a fitted model");
  Common fc_common;
  struct {
    std::string model;
    std::string input;
    std::string output;
    std::string gap_policy = "error";
    std::int64_t interval = 600;
  } fc;
  forecast->add_option("-m,--model", fc.model, "model file from `fit`")->required();
  forecast->add_option("-i,--input", fc.input, "history series CSV")->required();
  forecast->add_option("-o,--output", fc.output, "forecast CSV path")->required();
  forecast->add_option("--gap-policy", fc.gap_policy, "error | split-at-gap");
  forecast->add_option("--interval", fc.interval, "sample interval in seconds");
  add_config_flags(forecast, fc_common);
  forecast->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(fc_common);
      const auto model = windcast::model_io::load_model(fc.model);
      const auto ts = windcast::io::load_csv(
          fc.input, fc.interval, windcast::io::gap_policy_from_string(fc.gap_policy));
      const std::size_t hist = std::min(ts.size(), model.history_window);
      const std::span<const double> history(ts.values.data() + (ts.size() - hist), hist);
      const auto predicted = windcast::hybrid::forecast_hybrid(model, history, cfg.horizon);
      write_forecast_csv(ts, predicted, model_label(model), fc.output);
    };
  });

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "rolling-origin evaluation of one model");
  Common ev_common;
  struct {
    std::string input;
    std::string model = "hybrid";
    std::string metrics;
    std::string summary;
    std::string trace;
    std::string gap_policy = "error";
    std::int64_t interval = 600;
    std::size_t trace_origin = 0;
    bool refit = false;
  } ev;
  evaluate->add_option("-i,--input", ev.input, "input series CSV")->required();
  evaluate->add_option("--model", ev.model, "hybrid | ar | svr");
  evaluate->add_option("--metrics", ev.metrics, "per-origin metrics CSV path")->required();
  evaluate->add_option("--summary", ev.summary, "summary CSV path")->required();
  evaluate->add_option("--trace", ev.trace, "forecast trace CSV path");
  evaluate->add_option("--trace-origin", ev.trace_origin, "origin ordinal for the trace");
  evaluate->add_flag("--refit", ev.refit, "refit on the trailing window at each origin");
  evaluate->add_option("--gap-policy", ev.gap_policy, "error | split-at-gap");
  evaluate->add_option("--interval", ev.interval, "sample interval in seconds");
  add_config_flags(evaluate, ev_common);
  evaluate->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(ev_common);
      const auto ts = windcast::io::load_csv(
          ev.input, ev.interval, windcast::io::gap_policy_from_string(ev.gap_policy));
      auto ec = windcast::pipeline::eval_config(ts, cfg);
      ec.refit_per_origin = ev.refit;
      ec.trace_origin = ev.trace_origin;
      const auto recipe = windcast::pipeline::recipe_by_name(ev.model, cfg);
      std::vector<windcast::eval::TraceRow> trace;
      auto rows = windcast::eval::rolling_evaluate(ts, recipe, ec,
                                                   ev.trace.empty() ? nullptr : &trace);
      const auto summary = windcast::eval::summarize(rows, recipe.name);
      windcast::eval::write_metrics_csv(ev.metrics, {{recipe.name, std::move(rows)}});
      windcast::eval::write_summary_csv(ev.summary, {summary});
      if (!ev.trace.empty()) windcast::eval::write_trace_csv(ev.trace, trace);
    };
  });

  // compare
  auto* compare = app.add_subcommand("compare", "evaluate several models on shared origins");
  Common cp_common;
  struct {
    std::string input;
    std::string models = "hybrid,ar";
    std::string metrics;
    std::string summary;
    std::string trace;
    std::string gap_policy = "error";
    std::int64_t interval = 600;
    std::size_t trace_origin = 0;
    bool refit = false;
  } cp;
  compare->add_option("-i,--input", cp.input, "input series CSV")->required();
  compare->add_option("--models", cp.models, "comma-separated recipe names (>= 2)");
  compare->add_option("--metrics", cp.metrics, "per-origin metrics CSV path")->required();
  compare->add_option("--summary", cp.summary, "summary CSV path")->required();
  compare->add_option("--trace", cp.trace, "forecast trace CSV path");
  compare->add_option("--trace-origin", cp.trace_origin, "origin ordinal for the trace");
  compare->add_flag("--refit", cp.refit, "refit on the trailing window at each origin");
  compare->add_option("--gap-policy", cp.gap_policy, "error | split-at-gap");
  compare->add_option("--interval", cp.interval, "sample interval in seconds");
  add_config_flags(compare, cp_common);
  compare->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve(cp_common);
      const auto ts = windcast::io::load_csv(
          cp.input, cp.interval, windcast::io::gap_policy_from_string(cp.gap_policy));
      auto ec = windcast::pipeline::eval_config(ts, cfg);
      ec.refit_per_origin = cp.refit;
      ec.trace_origin = cp.trace_origin;
      std::vector<windcast::eval::Recipe> recipes;
      for (const auto& name : split_names(cp.models)) {
        recipes.push_back(windcast::pipeline::recipe_by_name(name, cfg));
      }
      const auto result = windcast::eval::compare(ts, recipes, ec);
      windcast::eval::write_metrics_csv(cp.metrics, result.metrics);
      windcast::eval::write_summary_csv(cp.summary, result.summaries);
      if (!cp.trace.empty()) windcast::eval::write_trace_csv(cp.trace, result.trace);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    action();
  } catch (const windcast::config::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
