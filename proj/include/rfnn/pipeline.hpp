#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfnn/config.hpp"
#include "rfnn/experiment.hpp"

namespace rfnn {

/// Normalized train/test split of the configured problem.
struct LoadedProblem {
  std::string name;
  Dataset train;
  Dataset test;
  NormalizationSpec normalization;
  nlohmann::json summary;
};

/// Benchmark problems are sampled from RngStream(seed).child(0). Datasets are
/// split 75/25 with the same stream, then normalized to [0, 1] with maps
/// fitted on the training part.
LoadedProblem load_problem(const ProblemConfig& problem, std::uint64_t seed);

/// A method with its hyperparameters fixed, either from the config or by
/// cross-validation on the training set.
struct ResolvedMethod {
  std::string name;
  std::size_t nodes = 0;
  GeneratorConfig generator;
  std::optional<CvResult> cv;
};

ResolvedMethod resolve_method(const ExperimentConfig& cfg, std::size_t method_index,
                              const Dataset& train);

// Subcommand drivers. Each writes its files into cfg.output_dir and returns
// the summary document it wrote (also saved as summary.json).
//
//   fit          summary.json, trials.csv, model.json
//   benchmark    summary.json, trials.csv
//   grid-search  summary.json, cv.csv
//   compare      summary.json, trials.csv, cv.csv, histogram.csv
//   uae-sweep    summary.json, sweep.csv
//   emit         summary.json, train.csv, test.csv
//   histogram    summary.json, histogram.csv
//
// With TableFormat::json the tables are written as .json arrays instead.
nlohmann::json run_fit(const ExperimentConfig& cfg,
                       const std::optional<std::string>& method = std::nullopt);
nlohmann::json run_benchmark(const ExperimentConfig& cfg);
nlohmann::json run_grid_search(const ExperimentConfig& cfg);
nlohmann::json run_compare(const ExperimentConfig& cfg);
nlohmann::json run_uae_sweep(const ExperimentConfig& cfg);
nlohmann::json run_emit(const ExperimentConfig& cfg);
nlohmann::json run_histogram(const ExperimentConfig& cfg);

/// 2 config error, 3 data error, 4 numeric failure, 1 anything else.
int exit_code_for(const std::exception& e);

}  // namespace rfnn
