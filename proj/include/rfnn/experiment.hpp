#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfnn/dataio.hpp"
#include "rfnn/generator.hpp"
#include "rfnn/model.hpp"
#include "rfnn/stats.hpp"

namespace rfnn {

/// Runs fn(0) .. fn(count - 1) on up to `threads` workers. If any call
/// throws, the exception from the lowest index is rethrown after all
/// workers finish.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

struct TrialOptions {
  bool keep_weights = false;
  std::size_t threads = 1;
  SolverConfig readout;
};

struct TrialReport {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double rmse_train = 0.0;
  double rmse_test = 0.0;
  double wall_seconds = 0.0;
  std::optional<Matrix> weights;
};

/// Draws a hidden layer on `train`, fits the readout and returns the network.
TrainedNetwork fit_network(const GeneratorConfig& generator, const Dataset& train,
                           std::size_t m, const RngStream& rng,
                           const SolverConfig& readout = {});

/// Independent trials; trial t uses RngStream(seed).child(t), so reports
/// are identical for any thread count.
std::vector<TrialReport> run_trials(const GeneratorConfig& generator,
                                    const Dataset& train, const Dataset& test,
                                    std::size_t m, std::size_t trials,
                                    std::uint64_t seed,
                                    const TrialOptions& options = {});

struct GridSearchConfig {
  std::vector<std::size_t> node_counts;
  /// u, alpha_max or u_ae values; ignored by families without an interval.
  std::vector<double> interval_grid;
  std::size_t folds = 5;
  std::size_t trials_per_cell = 3;
  std::uint64_t seed = 1;

  void validate(MethodFamily family) const;
};

struct CvCell {
  std::size_t nodes = 0;
  std::optional<double> interval;
  double mean_rmse = 0.0;
};

struct CvResult {
  CvCell best;
  /// Sorted by nodes, then interval.
  std::vector<CvCell> table;
};

struct CvOptions {
  AnchorPolicy anchor = RandomTrainingPoint{};
  SolverConfig rae_solver;
  SolverConfig readout;
  std::size_t threads = 1;
};

/// Seeded shuffle of 0..n-1 cut into `folds` contiguous blocks whose sizes
/// differ by at most one.
std::vector<std::vector<std::size_t>> fold_partition(std::size_t n, std::size_t folds,
                                                     const RngStream& rng);

/// k-fold grid search. Each cell's score is the mean validation RMSE over
/// folds x trials_per_cell. The lowest score wins; ties go to fewer nodes,
/// then to the smaller interval bound.
CvResult cross_validate(const GridSearchConfig& grid, MethodFamily family,
                        const Dataset& train, const CvOptions& options = {});

/// Index of the winning cell of a table sorted by (nodes, interval).
std::size_t select_best_cell(const std::vector<CvCell>& table);

struct SweepPoint {
  double u_ae = 0.0;
  /// Per-trial median of |V| entries, averaged over trials.
  double median_abs_weight = 0.0;
  double mean_rmse = 0.0;
  double std_rmse = 0.0;
};

/// RAEM1 over a list of u_ae values. Trial t uses RngStream(seed).child(t)
/// for every u_ae, so points share their random draws.
std::vector<SweepPoint> uae_sweep(const Dataset& train, const Dataset& test,
                                  std::size_t m, const std::vector<double>& uae_values,
                                  std::size_t trials, std::uint64_t seed,
                                  const CvOptions& options = {});

/// `count` values from lo to hi, evenly spaced in log10.
std::vector<double> log_space(double lo, double hi, std::size_t count);

struct MethodSummary {
  std::string name;
  std::string family;
  std::size_t nodes = 0;
  std::optional<double> interval;
  std::size_t trials = 0;
  double mean_rmse = 0.0;
  double std_rmse = 0.0;
  double p10_rmse = 0.0;
  double median_rmse = 0.0;
  double p90_rmse = 0.0;
  double min_rmse = 0.0;
  double max_rmse = 0.0;
  double mean_train_rmse = 0.0;
};

MethodSummary summarize(const std::string& name, const GeneratorConfig& generator,
                        std::size_t m, const std::vector<TrialReport>& reports);

struct PairwiseTest {
  std::string first;
  std::string second;
  WilcoxonResult result;
};

/// Wilcoxon test on test RMSE for every pair of methods, paired by trial.
/// Pairs with fewer than 6 trials are skipped.
std::vector<PairwiseTest> pairwise_wilcoxon(
    const std::vector<std::string>& names,
    const std::vector<std::vector<TrialReport>>& reports);

/// Pooled histogram of hidden weights from every report that kept them.
/// Throws InvalidInputError when no report carries weights.
Histogram weight_histogram(const std::vector<TrialReport>& reports, std::size_t bins);

nlohmann::json to_json(const MethodSummary& s);
nlohmann::json to_json(const PairwiseTest& t);

}  // namespace rfnn
