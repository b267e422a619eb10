#include "windcast/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "windcast/io_util.hpp"

namespace windcast::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    return ioutil::parse_double(value, key);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad number '" + value + "'");
  }
}

std::int64_t to_int(const std::string& key, const std::string& value) {
  try {
    return ioutil::parse_int(value, key);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad integer '" + value + "'");
  }
}

std::int64_t to_int_min(const std::string& key, const std::string& value, std::int64_t lo) {
  const std::int64_t v = to_int(key, value);
  if (v < lo) {
    throw ConfigError("config key '" + key + "': value " + value + " is below " +
                      std::to_string(lo));
  }
  return v;
}

std::uint64_t to_seed(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE || value.find('-') != std::string::npos) {
    throw ConfigError("config key '" + key + "': bad seed '" + value + "'");
  }
  return v;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"filter", [](RunConfig& c, const std::string&, const std::string& v) { c.filter = v; }},
      {"levels",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.levels = static_cast<int>(to_int_min(k, v, 0));
       }},
      {"boundary",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v != "periodic" && v != "reflect") {
           throw ConfigError("config key '" + k + "': expected periodic or reflect, got '" + v +
                             "'");
         }
         c.boundary = v;
       }},
      {"split_level",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.split_level = static_cast<int>(to_int_min(k, v, 1));
       }},
      {"smooth_model",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v != "ar" && v != "svr") {
           throw ConfigError("config key '" + k + "': expected ar or svr, got '" + v + "'");
         }
         c.smooth_model = v;
       }},
      {"ar_order",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.ar_order = static_cast<int>(to_int_min(k, v, 0));
       }},
      {"ar_max_order",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.ar_max_order = static_cast<int>(to_int_min(k, v, 1));
       }},
      {"svr_kernel",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v != "linear" && v != "rbf" && v != "polynomial") {
           throw ConfigError("config key '" + k + "': expected linear, rbf or polynomial, got '" +
                             v + "'");
         }
         c.svr_kernel = v;
       }},
      {"svr_c",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.svr_c = to_double(k, v);
         if (!(c.svr_c > 0.0)) throw ConfigError("config key '" + k + "': must be positive");
       }},
      {"svr_epsilon",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.svr_epsilon = to_double(k, v);
         if (!(c.svr_epsilon >= 0.0)) {
           throw ConfigError("config key '" + k + "': must be >= 0");
         }
       }},
      {"svr_gamma",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.svr_gamma = to_double(k, v);
       }},
      {"svr_degree",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.svr_degree = static_cast<int>(to_int_min(k, v, 1));
       }},
      {"svr_coef0",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.svr_coef0 = to_double(k, v);
       }},
      {"svr_lag",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.svr_lag = static_cast<std::size_t>(to_int_min(k, v, 1));
       }},
      {"svr_tol",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.svr_tol = to_double(k, v);
         if (!(c.svr_tol > 0.0)) throw ConfigError("config key '" + k + "': must be positive");
       }},
      {"svr_max_iter",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.svr_max_iter = static_cast<int>(to_int_min(k, v, 1));
       }},
      {"horizon",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.horizon = static_cast<std::size_t>(to_int_min(k, v, 1));
       }},
      {"stride",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.stride = static_cast<std::size_t>(to_int_min(k, v, 1));
       }},
      {"training_window",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         // "first-month", "all", or a sample count
         if (v != "first-month" && v != "all") to_int_min(k, v, 2);
         c.training_window = v;
       }},
      {"history_window",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.history_window = static_cast<std::size_t>(to_int_min(k, v, 1));
       }},
      {"seed",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.seed = to_seed(k, v);
       }},
  };
  return table;
}

void apply(RunConfig& cfg, const KeyValues& kv) {
  const auto& table = setters();
  for (const auto& [key, value] : kv) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(cfg, key, value);
  }
}

}  // namespace

KeyValues parse_config_file(const std::string& text, const std::string& path) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + " line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(path + " line " + std::to_string(lineno) + ": empty key or value");
    }
    kv[key] = value;
  }
  return kv;
}

RunConfig resolve_config(const KeyValues& file_values, const KeyValues& flag_values) {
  RunConfig cfg;
  apply(cfg, file_values);
  apply(cfg, flag_values);
  if (file_values.find("seed") == file_values.end() &&
      flag_values.find("seed") == flag_values.end()) {
    if (const char* env = std::getenv("WINDCAST_SEED")) {
      cfg.seed = to_seed("WINDCAST_SEED", env);
    }
  }
  return cfg;
}

void validate_assignment(const RunConfig& cfg) {
  if (cfg.levels > 0 && (cfg.split_level < 1 || cfg.split_level > cfg.levels)) {
    throw ConfigError("split_level " + std::to_string(cfg.split_level) +
                      " outside [1, levels=" + std::to_string(cfg.levels) + "]");
  }
}

}  // namespace windcast::config
