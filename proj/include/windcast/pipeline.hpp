#pragma once

#include "windcast/config.hpp"
#include "windcast/eval.hpp"
#include "windcast/hybrid.hpp"
#include "windcast/timeseries.hpp"

namespace windcast::pipeline {

wavelet::DecompositionSpec decomposition_spec(const config::RunConfig& cfg);
hybrid::BandAssignment band_assignment(const config::RunConfig& cfg);
hybrid::ArConfig ar_config(const config::RunConfig& cfg);
hybrid::SvrConfig svr_config(const config::RunConfig& cfg);

// "first-month" becomes the number of samples before the first day of the
// month after the series start; "all" is the whole series (useful for
// `fit` on a pre-cut file); a numeric value is used as-is.
std::size_t resolve_training_samples(const io::TimeSeries& series, const config::RunConfig& cfg);

eval::EvalConfig eval_config(const io::TimeSeries& series, const config::RunConfig& cfg);

hybrid::HybridModel fit_from_config(std::span<const double> training,
                                    const config::RunConfig& cfg);

// Recipes named "hybrid", "ar" and "svr". The baselines are fitted through
// the degenerate no-decomposition hybrid, so a levels=0 hybrid and the
// matching baseline produce identical forecasts.
eval::Recipe hybrid_recipe(const config::RunConfig& cfg);
eval::Recipe ar_recipe(const config::RunConfig& cfg);
eval::Recipe svr_recipe(const config::RunConfig& cfg);
eval::Recipe recipe_by_name(const std::string& name, const config::RunConfig& cfg);

}  // namespace windcast::pipeline
