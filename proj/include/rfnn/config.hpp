#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfnn/benchfn.hpp"
#include "rfnn/dataio.hpp"
#include "rfnn/generator.hpp"

namespace rfnn {

// Experiment config file. Every section is optional except "problem" and
// "methods":
//
// {
//   "problem": {"kind": "benchmark", "function": "tf1", "n": 2, "size": 5000}
//            | {"kind": "dataset", "path": "stock.dat", "name": "stock",
//               "delimiter": ",", "header": false, "target_column": 9},
//   "methods": [{"name": "RalphaM", "family": "ralpham", "nodes": 800,
//                "interval": 90, "interval_grid": [10, 20, ...],
//                "anchor": "training_point" | "uniform" | "cluster",
//                "rae_ridge_lambda": 1e-6}],
//   "grid": {"node_counts": [...], "folds": 5, "trials_per_cell": 3},
//   "sweep": {"nodes": 25, "uae_values": [...] | {"from", "to", "count"}},
//   "trials": 100, "seed": 1, "threads": 1, "histogram_bins": 50,
//   "output_dir": "out", "format": "csv"
// }

struct ProblemConfig {
  enum class Kind { benchmark, dataset };
  Kind kind = Kind::benchmark;
  TargetFunction tf;
  std::optional<std::size_t> size;
  std::filesystem::path path;
  std::string name;
  CsvOptions csv;
};

struct MethodConfig {
  std::string name;
  MethodFamily family = MethodFamily::ralpham;
  std::optional<std::size_t> nodes;
  std::optional<double> interval;
  std::vector<double> interval_grid;
  AnchorPolicy anchor = RandomTrainingPoint{};
  SolverConfig rae_solver;

  /// Whether nodes and (where applicable) interval are fixed.
  bool fully_specified() const;
  GeneratorConfig generator() const;
};

struct GridSection {
  std::vector<std::size_t> node_counts;
  std::size_t folds = 5;
  std::size_t trials_per_cell = 3;
};

struct SweepSection {
  std::size_t nodes = 25;
  std::vector<double> uae_values;
};

enum class TableFormat { csv, json };

struct ExperimentConfig {
  ProblemConfig problem;
  std::vector<MethodConfig> methods;
  GridSection grid;
  SweepSection sweep;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::size_t histogram_bins = 50;
  std::filesystem::path output_dir = "out";
  TableFormat format = TableFormat::csv;

  /// Throws InvalidConfigError on inconsistent settings.
  void validate() const;
};

/// Default interval grid for a family: u and u_ae on log grids
/// (u: 1e-2..1e2, 13 points; u_ae: 1e-5..1e1, 25 points), alpha_max on
/// 10..90 degrees in steps of 10.
std::vector<double> default_interval_grid(MethodFamily family);

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Parses "training_point", "uniform" or "cluster".
AnchorPolicy parse_anchor(const std::string& name);
std::string anchor_name(const AnchorPolicy& anchor);

}  // namespace rfnn
