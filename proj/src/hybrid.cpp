#include "windcast/hybrid.hpp"

#include <stdexcept>

namespace windcast::hybrid {

namespace {

ComponentModel fit_component(const std::string& label, ModelKind kind,
                             std::span<const double> series, const ArConfig& ar_config,
                             const SvrConfig& svr_config) {
  ComponentModel cm;
  cm.label = label;
  cm.kind = kind;
  try {
    if (kind == ModelKind::ar) {
      const int order = ar_config.order > 0
                            ? ar_config.order
                            : ar::select_order(series, ar_config.max_order);
      cm.model = ar::fit_burg(series, order);
    } else {
      const auto pairs = svr::embed(series, svr_config.lag);
      cm.model = svr::train_svr(pairs, svr_config.kernel, svr_config.hyperparams);
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("component " + label + ": " + e.what());
  }
  return cm;
}

std::vector<double> forecast_component(const ComponentModel& cm, std::span<const double> history,
                                       std::size_t horizon) {
  try {
    if (cm.kind == ModelKind::ar) {
      return ar::forecast_ar(std::get<ar::ArModel>(cm.model), history, horizon);
    }
    return svr::forecast_svr(std::get<svr::SvrModel>(cm.model), history, horizon);
  } catch (const std::exception& e) {
    throw std::runtime_error("component " + cm.label + ": " + e.what());
  }
}

}  // namespace

std::string to_string(ModelKind kind) {
  return kind == ModelKind::ar ? "ar" : "svr";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "ar") return ModelKind::ar;
  if (name == "svr") return ModelKind::svr;
  throw std::invalid_argument("unknown model kind '" + name + "' (expected ar or svr)");
}

HybridModel fit_hybrid(std::span<const double> series, const wavelet::DecompositionSpec& spec,
                       const BandAssignment& assignment, const ArConfig& ar_config,
                       const SvrConfig& svr_config) {
  HybridModel model;
  model.spec = spec;
  model.assignment = assignment;
  model.training_samples = series.size();

  if (spec.levels == 0) {
    model.components.push_back(
        fit_component("smooth", assignment.smooth, series, ar_config, svr_config));
    return model;
  }

  if (assignment.split_level < 1 || assignment.split_level > spec.levels) {
    throw std::invalid_argument("fit_hybrid: split_level must lie in [1, levels]");
  }
  const wavelet::Decomposition d = wavelet::decompose(series, spec);
  for (int j = 1; j <= spec.levels; ++j) {
    const std::string label = "d" + std::to_string(j);
    model.components.push_back(fit_component(label, assignment.kind_for_detail(j),
                                             d.details[j - 1], ar_config, svr_config));
  }
  model.components.push_back(
      fit_component("smooth", assignment.smooth, d.smooth, ar_config, svr_config));
  return model;
}

std::vector<std::vector<double>> forecast_components(const HybridModel& model,
                                                     std::span<const double> history,
                                                     std::size_t horizon) {
  std::vector<std::vector<double>> out;
  out.reserve(model.components.size());

  if (model.spec.levels == 0) {
    if (model.components.size() != 1) {
      throw std::invalid_argument("forecast_components: undecomposed model needs one component");
    }
    out.push_back(forecast_component(model.components[0], history, horizon));
    return out;
  }

  if (model.components.size() != static_cast<std::size_t>(model.spec.levels) + 1) {
    throw std::invalid_argument("forecast_components: component count does not match levels");
  }
  const wavelet::Decomposition d = wavelet::decompose(history, model.spec);
  for (int j = 1; j <= model.spec.levels; ++j) {
    out.push_back(forecast_component(model.components[j - 1], d.details[j - 1], horizon));
  }
  out.push_back(forecast_component(model.components.back(), d.smooth, horizon));
  return out;
}

std::vector<double> forecast_hybrid(const HybridModel& model, std::span<const double> history,
                                    std::size_t horizon) {
  const auto parts = forecast_components(model, history, horizon);
  std::vector<double> sum(horizon, 0.0);
  for (const auto& part : parts) {
    for (std::size_t h = 0; h < horizon; ++h) sum[h] += part[h];
  }
  return sum;
}

HybridModel fit_standalone(ModelKind kind, std::span<const double> series,
                           const ArConfig& ar_config, const SvrConfig& svr_config) {
  wavelet::DecompositionSpec spec;
  spec.levels = 0;
  BandAssignment assignment;
  assignment.smooth = kind;
  return fit_hybrid(series, spec, assignment, ar_config, svr_config);
}

std::vector<double> forecast_standalone(ModelKind kind, std::span<const double> series,
                                        const ArConfig& ar_config, const SvrConfig& svr_config,
                                        std::size_t horizon) {
  const HybridModel model = fit_standalone(kind, series, ar_config, svr_config);
  return forecast_hybrid(model, series, horizon);
}

}  // namespace windcast::hybrid
