#include "windcast/pipeline.hpp"

#include <memory>
#include <stdexcept>

#include "windcast/io_util.hpp"

namespace windcast::pipeline {

namespace {

eval::Recipe make_recipe(std::string name, config::RunConfig cfg) {
  eval::Recipe recipe;
  recipe.name = std::move(name);
  recipe.fit = [cfg](const io::TimeSeries& series, std::size_t train_begin,
                     std::size_t train_end) -> eval::Forecaster {
    if (train_end > series.size() || train_begin >= train_end) {
      throw std::invalid_argument("recipe fit: bad training range");
    }
    const std::span<const double> training(series.values.data() + train_begin,
                                           train_end - train_begin);
    auto model = std::make_shared<const hybrid::HybridModel>(fit_from_config(training, cfg));
    return [model](std::span<const double> history, std::size_t, std::size_t horizon) {
      return hybrid::forecast_hybrid(*model, history, horizon);
    };
  };
  return recipe;
}

}  // namespace

wavelet::DecompositionSpec decomposition_spec(const config::RunConfig& cfg) {
  wavelet::DecompositionSpec spec;
  spec.levels = cfg.levels;
  spec.boundary = wavelet::boundary_from_string(cfg.boundary);
  if (cfg.levels > 0) spec.filter = wavelet::make_filter(cfg.filter);
  return spec;
}

hybrid::BandAssignment band_assignment(const config::RunConfig& cfg) {
  config::validate_assignment(cfg);
  hybrid::BandAssignment assignment;
  assignment.split_level = cfg.split_level;
  assignment.smooth = hybrid::model_kind_from_string(cfg.smooth_model);
  return assignment;
}

hybrid::ArConfig ar_config(const config::RunConfig& cfg) {
  hybrid::ArConfig ac;
  ac.order = cfg.ar_order;
  ac.max_order = cfg.ar_max_order;
  return ac;
}

hybrid::SvrConfig svr_config(const config::RunConfig& cfg) {
  hybrid::SvrConfig sc;
  sc.lag = cfg.svr_lag;
  sc.kernel.kind = kernels::kernel_kind_from_string(cfg.svr_kernel);
  sc.kernel.gamma = cfg.svr_gamma;
  sc.kernel.degree = cfg.svr_degree;
  sc.kernel.coef0 = cfg.svr_coef0;
  sc.hyperparams.c = cfg.svr_c;
  sc.hyperparams.epsilon = cfg.svr_epsilon;
  sc.hyperparams.tol = cfg.svr_tol;
  sc.hyperparams.max_iter = cfg.svr_max_iter;
  return sc;
}

std::size_t resolve_training_samples(const io::TimeSeries& series, const config::RunConfig& cfg) {
  if (cfg.training_window == "all") return series.size();
  if (cfg.training_window != "first-month") {
    const std::int64_t n = ioutil::parse_int(cfg.training_window, "training_window");
    if (n < 2 || static_cast<std::size_t>(n) > series.size()) {
      throw std::invalid_argument("training_window " + cfg.training_window +
                                  " outside the series (have " + std::to_string(series.size()) +
                                  " samples)");
    }
    return static_cast<std::size_t>(n);
  }
  const std::int64_t end_time = io::next_month_start(series.start);
  const std::int64_t span = end_time - series.start;
  const std::size_t count =
      static_cast<std::size_t>((span + series.interval - 1) / series.interval);
  if (count < 2 || count >= series.size()) {
    throw std::invalid_argument("first calendar month holds " + std::to_string(count) +
                                " samples; series has " + std::to_string(series.size()));
  }
  return count;
}

eval::EvalConfig eval_config(const io::TimeSeries& series, const config::RunConfig& cfg) {
  eval::EvalConfig ec;
  ec.horizon = cfg.horizon;
  ec.stride = cfg.stride;
  ec.training_samples = resolve_training_samples(series, cfg);
  ec.history_window = cfg.history_window;
  return ec;
}

hybrid::HybridModel fit_from_config(std::span<const double> training,
                                    const config::RunConfig& cfg) {
  hybrid::HybridModel model = hybrid::fit_hybrid(training, decomposition_spec(cfg),
                                                 band_assignment(cfg), ar_config(cfg),
                                                 svr_config(cfg));
  model.history_window = cfg.history_window;
  return model;
}

eval::Recipe hybrid_recipe(const config::RunConfig& cfg) {
  return make_recipe("hybrid", cfg);
}

eval::Recipe ar_recipe(const config::RunConfig& cfg) {
  config::RunConfig standalone = cfg;
  standalone.levels = 0;
  standalone.smooth_model = "ar";
  return make_recipe("ar", standalone);
}

eval::Recipe svr_recipe(const config::RunConfig& cfg) {
  config::RunConfig standalone = cfg;
  standalone.levels = 0;
  standalone.smooth_model = "svr";
  return make_recipe("svr", standalone);
}

eval::Recipe recipe_by_name(const std::string& name, const config::RunConfig& cfg) {
  if (name == "hybrid") return hybrid_recipe(cfg);
  if (name == "ar") return ar_recipe(cfg);
  if (name == "svr") return svr_recipe(cfg);
  throw std::invalid_argument("unknown model '" + name + "' (expected hybrid, ar or svr)");
}

}  // namespace windcast::pipeline
