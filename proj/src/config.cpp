#include "rfnn/config.hpp"

#include <fstream>

#include "rfnn/error.hpp"
#include "rfnn/experiment.hpp"

namespace rfnn {
namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

ProblemConfig parse_problem(const json& j) {
  ProblemConfig p;
  const std::string kind = get_or<std::string>(j, "kind", "benchmark");
  if (kind == "benchmark") {
    p.kind = ProblemConfig::Kind::benchmark;
    p.tf.id = parse_target_function(get_or<std::string>(j, "function", "tf1"));
    p.tf.n = get_or<std::size_t>(j, "n", 2);
    if (j.contains("size") && !j.at("size").is_null()) p.size = j.at("size").get<std::size_t>();
    p.name = get_or<std::string>(j, "name", p.tf.name() + "_n" + std::to_string(p.tf.n));
  } else if (kind == "dataset") {
    p.kind = ProblemConfig::Kind::dataset;
    p.path = j.at("path").get<std::string>();
    p.name = get_or<std::string>(j, "name", p.path.stem().string());
    const std::string delim = get_or<std::string>(j, "delimiter", ",");
    if (delim.size() != 1) throw InvalidConfigError("delimiter must be one character");
    p.csv.delimiter = delim[0];
    p.csv.header = get_or<bool>(j, "header", false);
    if (j.contains("target_column") && !j.at("target_column").is_null()) {
      p.csv.target_column = j.at("target_column").get<std::size_t>();
    }
  } else {
    throw InvalidConfigError("problem.kind must be 'benchmark' or 'dataset'");
  }
  return p;
}

MethodConfig parse_method(const json& j) {
  MethodConfig m;
  m.family = parse_family(j.at("family").get<std::string>());
  m.name = get_or<std::string>(j, "name", family_name(m.family));
  if (j.contains("nodes") && !j.at("nodes").is_null()) m.nodes = j.at("nodes").get<std::size_t>();
  if (j.contains("interval") && !j.at("interval").is_null()) {
    m.interval = j.at("interval").get<double>();
  }
  m.interval_grid = get_or<std::vector<double>>(j, "interval_grid", {});
  m.anchor = parse_anchor(get_or<std::string>(j, "anchor", "training_point"));
  if (j.contains("rae_ridge_lambda") && !j.at("rae_ridge_lambda").is_null()) {
    m.rae_solver.ridge_lambda = j.at("rae_ridge_lambda").get<double>();
  }
  return m;
}

std::vector<double> parse_uae_values(const json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  return log_space(j.at("from").get<double>(), j.at("to").get<double>(),
                   j.at("count").get<std::size_t>());
}

}  // namespace

bool MethodConfig::fully_specified() const {
  return nodes.has_value() && (!family_has_interval(family) || interval.has_value());
}

GeneratorConfig MethodConfig::generator() const {
  if (!fully_specified()) {
    throw InvalidConfigError("method '" + name + "' has no fixed nodes/interval");
  }
  return make_generator(family, interval.value_or(0.0), anchor, rae_solver);
}

void ExperimentConfig::validate() const {
  if (methods.empty()) throw InvalidConfigError("config lists no methods");
  if (trials < 1) throw InvalidConfigError("trials must be >= 1");
  if (histogram_bins < 1) throw InvalidConfigError("histogram_bins must be >= 1");
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t k = i + 1; k < methods.size(); ++k) {
      if (methods[i].name == methods[k].name) {
        throw InvalidConfigError("duplicate method name '" + methods[i].name + "'");
      }
    }
    const MethodConfig& m = methods[i];
    m.rae_solver.validate();
    if (m.nodes && *m.nodes == 0) throw InvalidConfigError("nodes must be positive");
    if (m.fully_specified()) {
      const GeneratorConfig g = m.generator();
      if (const auto* ram = std::get_if<RamConfig>(&g)) ram->validate();
      if (const auto* ra = std::get_if<RalphamConfig>(&g)) ra->validate();
      if (m.family == MethodFamily::raem1 && !(*m.interval > 0.0)) {
        throw InvalidConfigError("u_ae must be positive");
      }
    }
  }
}

std::vector<double> default_interval_grid(MethodFamily family) {
  switch (family) {
    case MethodFamily::ram: return log_space(1e-2, 1e2, 13);
    case MethodFamily::raem1: return log_space(1e-5, 1e1, 25);
    case MethodFamily::ralpham: return {10, 20, 30, 40, 50, 60, 70, 80, 90};
    default: return {};
  }
}

ExperimentConfig parse_config(const json& doc) {
  try {
    ExperimentConfig cfg;
    cfg.problem = parse_problem(doc.at("problem"));
    for (const auto& m : doc.at("methods")) cfg.methods.push_back(parse_method(m));
    if (doc.contains("grid")) {
      const json& g = doc.at("grid");
      cfg.grid.node_counts = get_or<std::vector<std::size_t>>(g, "node_counts", {});
      cfg.grid.folds = get_or<std::size_t>(g, "folds", 5);
      cfg.grid.trials_per_cell = get_or<std::size_t>(g, "trials_per_cell", 3);
    }
    if (doc.contains("sweep")) {
      const json& s = doc.at("sweep");
      cfg.sweep.nodes = get_or<std::size_t>(s, "nodes", 25);
      if (s.contains("uae_values")) cfg.sweep.uae_values = parse_uae_values(s.at("uae_values"));
    }
    if (cfg.sweep.uae_values.empty()) cfg.sweep.uae_values = default_interval_grid(MethodFamily::raem1);
    cfg.trials = get_or<std::size_t>(doc, "trials", 100);
    cfg.seed = get_or<std::uint64_t>(doc, "seed", 1);
    cfg.threads = get_or<std::size_t>(doc, "threads", 1);
    cfg.histogram_bins = get_or<std::size_t>(doc, "histogram_bins", 50);
    cfg.output_dir = get_or<std::string>(doc, "output_dir", "out");
    const std::string format = get_or<std::string>(doc, "format", "csv");
    if (format == "csv") {
      cfg.format = TableFormat::csv;
    } else if (format == "json") {
      cfg.format = TableFormat::json;
    } else {
      throw InvalidConfigError("format must be 'csv' or 'json'");
    }
    return cfg;
  } catch (const json::exception& e) {
    throw InvalidConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfigError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidConfigError("config '" + path.string() + "': " + e.what());
  }
  return parse_config(doc);
}

AnchorPolicy parse_anchor(const std::string& name) {
  if (name == "training_point") return RandomTrainingPoint{};
  if (name == "uniform") return UniformInHypercube{};
  if (name == "cluster") return ClusterPrototype{};
  throw InvalidConfigError("unknown anchor policy '" + name + "'");
}

std::string anchor_name(const AnchorPolicy& anchor) {
  if (std::holds_alternative<UniformInHypercube>(anchor)) return "uniform";
  if (std::holds_alternative<ClusterPrototype>(anchor)) return "cluster";
  return "training_point";
}

}  // namespace rfnn
