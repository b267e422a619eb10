#pragma once

#include <string>

#include "windcast/hybrid.hpp"

namespace windcast::model_io {

// Versioned line-oriented text format ("windcast-model 1"). Numbers are
// written with 17 significant digits so a save/load cycle reproduces the
// model bit-exactly. The solver report is transient and not stored.
std::string serialize(const hybrid::HybridModel& model);
hybrid::HybridModel deserialize(const std::string& text);

void save_model(const hybrid::HybridModel& model, const std::string& path);
hybrid::HybridModel load_model(const std::string& path);

}  // namespace windcast::model_io
