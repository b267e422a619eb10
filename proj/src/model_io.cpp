#include "windcast/model_io.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "windcast/io_util.hpp"

namespace windcast::model_io {

namespace {

using ioutil::fmt17;
using ioutil::parse_double;
using ioutil::parse_int;

void write_values(std::ostringstream& out, const char* key, const std::vector<double>& v) {
  out << key << " " << v.size();
  for (double x : v) out << " " << fmt17(x);
  out << "\n";
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  // Next non-empty line split into tokens; first token must equal `key`.
  std::vector<std::string> expect(const std::string& key) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (toks.empty()) continue;
      if (toks[0] != key) {
        throw std::runtime_error("model line " + std::to_string(lineno_) + ": expected '" + key +
                                 "', found '" + toks[0] + "'");
      }
      toks.erase(toks.begin());
      return toks;
    }
    throw std::runtime_error("model truncated: expected '" + key + "'");
  }

  std::string context() const { return "model line " + std::to_string(lineno_); }

 private:
  std::istringstream in_;
  int lineno_ = 0;
};

std::vector<double> read_values(LineReader& r, const std::string& key) {
  const auto toks = r.expect(key);
  if (toks.empty()) throw std::runtime_error(r.context() + ": missing count for " + key);
  const std::int64_t count = parse_int(toks[0], r.context());
  if (count < 0 || toks.size() != static_cast<std::size_t>(count) + 1) {
    throw std::runtime_error(r.context() + ": " + key + " count mismatch");
  }
  std::vector<double> v(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = parse_double(toks[i + 1], r.context());
  return v;
}

double read_one(LineReader& r, const std::string& key) {
  const auto toks = r.expect(key);
  if (toks.size() != 1) throw std::runtime_error(r.context() + ": " + key + " wants one value");
  return parse_double(toks[0], r.context());
}

std::int64_t read_one_int(LineReader& r, const std::string& key) {
  const auto toks = r.expect(key);
  if (toks.size() != 1) throw std::runtime_error(r.context() + ": " + key + " wants one value");
  return parse_int(toks[0], r.context());
}

void serialize_ar(std::ostringstream& out, const ar::ArModel& m) {
  out << "order " << m.order << "\n";
  write_values(out, "coefficients", m.coefficients);
  out << "intercept " << fmt17(m.intercept) << "\n";
  out << "innovation_variance " << fmt17(m.innovation_variance) << "\n";
  out << "training_mean " << fmt17(m.training_mean) << "\n";
  out << "stationary " << (m.stationary ? 1 : 0) << "\n";
}

ar::ArModel deserialize_ar(LineReader& r) {
  ar::ArModel m;
  m.order = static_cast<int>(read_one_int(r, "order"));
  m.coefficients = read_values(r, "coefficients");
  if (m.coefficients.size() != static_cast<std::size_t>(m.order)) {
    throw std::runtime_error(r.context() + ": coefficient count does not match order");
  }
  m.intercept = read_one(r, "intercept");
  m.innovation_variance = read_one(r, "innovation_variance");
  m.training_mean = read_one(r, "training_mean");
  m.stationary = read_one_int(r, "stationary") != 0;
  return m;
}

void serialize_svr(std::ostringstream& out, const svr::SvrModel& m) {
  out << "input_dim " << m.input_dim << "\n";
  out << "kernel " << kernels::kernel_kind_to_string(m.kernel.kind) << " "
      << fmt17(m.kernel.gamma) << " " << m.kernel.degree << " " << fmt17(m.kernel.coef0) << "\n";
  out << "hyperparams " << fmt17(m.hyperparams.c) << " " << fmt17(m.hyperparams.epsilon) << " "
      << fmt17(m.hyperparams.tol) << " " << m.hyperparams.max_iter << "\n";
  write_values(out, "x_mean", m.scaling.x_mean);
  write_values(out, "x_spread", m.scaling.x_spread);
  out << "y_scale " << fmt17(m.scaling.y_mean) << " " << fmt17(m.scaling.y_spread) << "\n";
  out << "bias " << fmt17(m.bias) << "\n";
  out << "nsv " << m.n_support() << "\n";
  for (std::size_t i = 0; i < m.n_support(); ++i) {
    out << "sv " << m.support_indices[i] << " " << fmt17(m.dual_coefficients[i]);
    for (std::size_t j = 0; j < m.input_dim; ++j) {
      out << " " << fmt17(m.support_vectors[i * m.input_dim + j]);
    }
    out << "\n";
  }
}

svr::SvrModel deserialize_svr(LineReader& r) {
  svr::SvrModel m;
  m.input_dim = static_cast<std::size_t>(read_one_int(r, "input_dim"));
  {
    const auto toks = r.expect("kernel");
    if (toks.size() != 4) throw std::runtime_error(r.context() + ": kernel wants four values");
    m.kernel.kind = kernels::kernel_kind_from_string(toks[0]);
    m.kernel.gamma = parse_double(toks[1], r.context());
    m.kernel.degree = static_cast<int>(parse_int(toks[2], r.context()));
    m.kernel.coef0 = parse_double(toks[3], r.context());
  }
  {
    const auto toks = r.expect("hyperparams");
    if (toks.size() != 4) {
      throw std::runtime_error(r.context() + ": hyperparams wants four values");
    }
    m.hyperparams.c = parse_double(toks[0], r.context());
    m.hyperparams.epsilon = parse_double(toks[1], r.context());
    m.hyperparams.tol = parse_double(toks[2], r.context());
    m.hyperparams.max_iter = static_cast<int>(parse_int(toks[3], r.context()));
  }
  m.scaling.x_mean = read_values(r, "x_mean");
  m.scaling.x_spread = read_values(r, "x_spread");
  if (m.scaling.x_mean.size() != m.input_dim || m.scaling.x_spread.size() != m.input_dim) {
    throw std::runtime_error(r.context() + ": scaling length does not match input_dim");
  }
  {
    const auto toks = r.expect("y_scale");
    if (toks.size() != 2) throw std::runtime_error(r.context() + ": y_scale wants two values");
    m.scaling.y_mean = parse_double(toks[0], r.context());
    m.scaling.y_spread = parse_double(toks[1], r.context());
  }
  m.bias = read_one(r, "bias");
  const std::int64_t nsv = read_one_int(r, "nsv");
  if (nsv < 0) throw std::runtime_error(r.context() + ": negative nsv");
  m.support_indices.reserve(static_cast<std::size_t>(nsv));
  m.dual_coefficients.reserve(static_cast<std::size_t>(nsv));
  m.support_vectors.reserve(static_cast<std::size_t>(nsv) * m.input_dim);
  for (std::int64_t i = 0; i < nsv; ++i) {
    const auto toks = r.expect("sv");
    if (toks.size() != m.input_dim + 2) {
      throw std::runtime_error(r.context() + ": sv wants index, coefficient and " +
                               std::to_string(m.input_dim) + " coordinates");
    }
    m.support_indices.push_back(static_cast<std::size_t>(parse_int(toks[0], r.context())));
    m.dual_coefficients.push_back(parse_double(toks[1], r.context()));
    for (std::size_t j = 0; j < m.input_dim; ++j) {
      m.support_vectors.push_back(parse_double(toks[j + 2], r.context()));
    }
  }
  return m;
}

}  // namespace

std::string serialize(const hybrid::HybridModel& model) {
  std::ostringstream out;
  out << "windcast-model 1\n";
  out << "levels " << model.spec.levels << "\n";
  out << "filter " << (model.spec.levels > 0 ? model.spec.filter.name : "none") << "\n";
  out << "boundary " << wavelet::to_string(model.spec.boundary) << "\n";
  out << "split_level " << model.assignment.split_level << "\n";
  out << "smooth_kind " << hybrid::to_string(model.assignment.smooth) << "\n";
  out << "history_window " << model.history_window << "\n";
  out << "training_start " << model.training_start << "\n";
  out << "training_samples " << model.training_samples << "\n";
  out << "components " << model.components.size() << "\n";
  for (const auto& cm : model.components) {
    out << "component " << cm.label << " " << hybrid::to_string(cm.kind) << "\n";
    if (cm.kind == hybrid::ModelKind::ar) {
      serialize_ar(out, std::get<ar::ArModel>(cm.model));
    } else {
      serialize_svr(out, std::get<svr::SvrModel>(cm.model));
    }
  }
  return out.str();
}

hybrid::HybridModel deserialize(const std::string& text) {
  LineReader r(text);
  {
    const auto toks = r.expect("windcast-model");
    if (toks.size() != 1 || toks[0] != "1") {
      throw std::runtime_error("unsupported model format version");
    }
  }
  hybrid::HybridModel model;
  model.spec.levels = static_cast<int>(read_one_int(r, "levels"));
  {
    const auto toks = r.expect("filter");
    if (toks.size() != 1) throw std::runtime_error(r.context() + ": filter wants one value");
    if (model.spec.levels > 0) model.spec.filter = wavelet::make_filter(toks[0]);
  }
  {
    const auto toks = r.expect("boundary");
    if (toks.size() != 1) throw std::runtime_error(r.context() + ": boundary wants one value");
    model.spec.boundary = wavelet::boundary_from_string(toks[0]);
  }
  model.assignment.split_level = static_cast<int>(read_one_int(r, "split_level"));
  {
    const auto toks = r.expect("smooth_kind");
    if (toks.size() != 1) throw std::runtime_error(r.context() + ": smooth_kind wants one value");
    model.assignment.smooth = hybrid::model_kind_from_string(toks[0]);
  }
  model.history_window = static_cast<std::size_t>(read_one_int(r, "history_window"));
  model.training_start = read_one_int(r, "training_start");
  model.training_samples = static_cast<std::size_t>(read_one_int(r, "training_samples"));
  const std::int64_t n_components = read_one_int(r, "components");
  const std::int64_t expected =
      model.spec.levels == 0 ? 1 : static_cast<std::int64_t>(model.spec.levels) + 1;
  if (n_components != expected) {
    throw std::runtime_error("model declares " + std::to_string(n_components) +
                             " components, levels imply " + std::to_string(expected));
  }
  for (std::int64_t i = 0; i < n_components; ++i) {
    const auto toks = r.expect("component");
    if (toks.size() != 2) {
      throw std::runtime_error(r.context() + ": component wants label and kind");
    }
    hybrid::ComponentModel cm;
    cm.label = toks[0];
    cm.kind = hybrid::model_kind_from_string(toks[1]);
    if (cm.kind == hybrid::ModelKind::ar) {
      cm.model = deserialize_ar(r);
    } else {
      cm.model = deserialize_svr(r);
    }
    model.components.push_back(std::move(cm));
  }
  return model;
}

void save_model(const hybrid::HybridModel& model, const std::string& path) {
  ioutil::atomic_write_text(path, serialize(model));
}

hybrid::HybridModel load_model(const std::string& path) {
  return deserialize(ioutil::read_text(path));
}

}  // namespace windcast::model_io
