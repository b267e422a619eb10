#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "windcast/ar.hpp"
#include "windcast/svr.hpp"
#include "windcast/wavelet.hpp"

namespace windcast::hybrid {

enum class ModelKind { ar, svr };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

// Details 1..split_level get the AR model, the rest get SVR. The smooth
// defaults to SVR but is overridable so an all-AR configuration exists.
struct BandAssignment {
  int split_level = 4;
  ModelKind smooth = ModelKind::svr;

  ModelKind kind_for_detail(int level) const {
    return level <= split_level ? ModelKind::ar : ModelKind::svr;
  }
};

struct ArConfig {
  int order = 0;  // 0 means select by AIC up to max_order
  int max_order = 24;
};

struct SvrConfig {
  std::size_t lag = 12;
  svr::KernelSpec kernel;
  svr::SvrHyperparams hyperparams;
};

struct ComponentModel {
  std::string label;  // "d1".."dJ" or "smooth"
  ModelKind kind = ModelKind::ar;
  std::variant<ar::ArModel, svr::SvrModel> model;
};

// levels == 0 is the no-decomposition configuration: one component,
// labelled "smooth", fitted on the raw series. The standalone baselines
// are exactly this, so baseline and degenerate-hybrid forecasts are the
// same code path.
struct HybridModel {
  wavelet::DecompositionSpec spec;
  BandAssignment assignment;
  std::vector<ComponentModel> components;  // d1..dJ then smooth
  std::size_t history_window = 2048;
  std::int64_t training_start = 0;  // epoch seconds, informational
  std::size_t training_samples = 0;
};

HybridModel fit_hybrid(std::span<const double> series, const wavelet::DecompositionSpec& spec,
                       const BandAssignment& assignment, const ArConfig& ar_config,
                       const SvrConfig& svr_config);

// Per-component forecasts in component order; forecast_hybrid sums these,
// so the additivity identity holds bit-for-bit.
std::vector<std::vector<double>> forecast_components(const HybridModel& model,
                                                     std::span<const double> history,
                                                     std::size_t horizon);

std::vector<double> forecast_hybrid(const HybridModel& model, std::span<const double> history,
                                    std::size_t horizon);

HybridModel fit_standalone(ModelKind kind, std::span<const double> series,
                           const ArConfig& ar_config, const SvrConfig& svr_config);

std::vector<double> forecast_standalone(ModelKind kind, std::span<const double> series,
                                        const ArConfig& ar_config, const SvrConfig& svr_config,
                                        std::size_t horizon);

}  // namespace windcast::hybrid
