#include "rfnn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "rfnn/error.hpp"

namespace rfnn {
namespace {

constexpr std::uint64_t kFoldStream = 0;
constexpr std::uint64_t kCellStream = 1;

double validation_rmse(const GeneratorConfig& generator, const Dataset& fit,
                       const Dataset& held_out, std::size_t m, const RngStream& rng,
                       const SolverConfig& readout) {
  const TrainedNetwork net = fit_network(generator, fit, m, rng, readout);
  return rmse(predict(net, held_out.x), held_out.y);
}

std::vector<CvCell> grid_cells(const GridSearchConfig& grid, MethodFamily family) {
  std::vector<std::size_t> nodes = grid.node_counts;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<std::optional<double>> intervals;
  if (family_has_interval(family)) {
    std::vector<double> sorted = grid.interval_grid;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    intervals.assign(sorted.begin(), sorted.end());
  } else {
    intervals.push_back(std::nullopt);
  }
  std::vector<CvCell> cells;
  for (std::size_t m : nodes) {
    for (const auto& iv : intervals) cells.push_back({m, iv, 0.0});
  }
  return cells;
}

}  // namespace

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  auto guarded = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) guarded(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

TrainedNetwork fit_network(const GeneratorConfig& generator, const Dataset& train,
                           std::size_t m, const RngStream& rng,
                           const SolverConfig& readout) {
  train.validate();
  TrainedNetwork net;
  net.hidden = generate_hidden_layer(generator, train.x, m, rng);
  net.readout = train_readout(net.hidden, train.x, train.y, readout);
  net.normalization = identity_normalization(train.input_dim());
  return net;
}

std::vector<TrialReport> run_trials(const GeneratorConfig& generator,
                                    const Dataset& train, const Dataset& test,
                                    std::size_t m, std::size_t trials,
                                    std::uint64_t seed, const TrialOptions& options) {
  if (trials < 1) throw InvalidConfigError("run_trials: trials must be >= 1");
  test.validate();
  std::vector<TrialReport> reports(trials);
  const RngStream root(seed);
  parallel_for(trials, options.threads, [&](std::size_t t) {
    const auto start = std::chrono::steady_clock::now();
    const RngStream rng = root.child(t);
    const TrainedNetwork net = fit_network(generator, train, m, rng, options.readout);
    TrialReport& r = reports[t];
    r.trial = t;
    r.seed = rng.seed();
    r.rmse_train = rmse(predict(net, train.x), train.y);
    r.rmse_test = rmse(predict(net, test.x), test.y);
    if (options.keep_weights) r.weights = net.hidden.weights;
    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  return reports;
}

void GridSearchConfig::validate(MethodFamily family) const {
  if (node_counts.empty()) throw InvalidConfigError("grid: empty node_counts");
  if (family_has_interval(family) && interval_grid.empty()) {
    throw InvalidConfigError("grid: empty interval grid for " + family_name(family));
  }
  if (folds < 2) throw InvalidConfigError("grid: folds must be >= 2");
  if (trials_per_cell < 1) throw InvalidConfigError("grid: trials_per_cell must be >= 1");
  for (std::size_t m : node_counts) {
    if (m == 0) throw InvalidConfigError("grid: node counts must be positive");
  }
  if (family_has_interval(family)) {
    for (double v : interval_grid) {
      if (family == MethodFamily::ralpham) RalphamConfig{0.0, v, {}}.validate();
      if (family == MethodFamily::ram) RamConfig{v, {}}.validate();
      if (family == MethodFamily::raem1 && !(v > 0.0)) {
        throw InvalidConfigError("grid: u_ae values must be positive");
      }
    }
  }
}

std::vector<std::vector<std::size_t>> fold_partition(std::size_t n, std::size_t folds,
                                                     const RngStream& rng) {
  if (folds < 2 || n < folds) {
    throw InvalidConfigError("fold_partition: need 2 <= folds <= N");
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  RngStream s = rng;
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[s.index(i + 1)]);
  std::vector<std::vector<std::size_t>> parts(folds);
  std::size_t start = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t len = n / folds + (f < n % folds ? 1 : 0);
    parts[f].assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                    order.begin() + static_cast<std::ptrdiff_t>(start + len));
    std::sort(parts[f].begin(), parts[f].end());
    start += len;
  }
  return parts;
}

std::size_t select_best_cell(const std::vector<CvCell>& table) {
  if (table.empty()) throw InvalidConfigError("empty grid");
  std::size_t best = 0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (table[i].mean_rmse < table[best].mean_rmse) best = i;
  }
  return best;
}

CvResult cross_validate(const GridSearchConfig& grid, MethodFamily family,
                        const Dataset& train, const CvOptions& options) {
  grid.validate(family);
  train.validate();
  if (train.size() < grid.folds) {
    throw InvalidInputError("cross_validate: fewer samples than folds");
  }
  const RngStream root(grid.seed);
  const auto parts = fold_partition(train.size(), grid.folds, root.child(kFoldStream));
  std::vector<Dataset> fit_sets;
  std::vector<Dataset> held_out;
  for (std::size_t f = 0; f < grid.folds; ++f) {
    std::vector<std::size_t> rest;
    for (std::size_t g = 0; g < grid.folds; ++g) {
      if (g != f) rest.insert(rest.end(), parts[g].begin(), parts[g].end());
    }
    std::sort(rest.begin(), rest.end());
    fit_sets.push_back(train.subset(rest));
    held_out.push_back(train.subset(parts[f]));
  }

  CvResult result;
  result.table = grid_cells(grid, family);
  const std::size_t units_per_cell = grid.folds * grid.trials_per_cell;
  std::vector<double> scores(result.table.size() * units_per_cell);
  const RngStream cells_rng = root.child(kCellStream);

  parallel_for(scores.size(), options.threads, [&](std::size_t u) {
    const std::size_t c = u / units_per_cell;
    const std::size_t unit = u % units_per_cell;
    const std::size_t fold = unit / grid.trials_per_cell;
    const CvCell& cell = result.table[c];
    const GeneratorConfig generator = make_generator(
        family, cell.interval.value_or(0.0), options.anchor, options.rae_solver);
    scores[u] = validation_rmse(generator, fit_sets[fold], held_out[fold], cell.nodes,
                                cells_rng.child(c).child(unit), options.readout);
  });

  for (std::size_t c = 0; c < result.table.size(); ++c) {
    double s = 0.0;
    for (std::size_t k = 0; k < units_per_cell; ++k) s += scores[c * units_per_cell + k];
    result.table[c].mean_rmse = s / static_cast<double>(units_per_cell);
  }
  result.best = result.table[select_best_cell(result.table)];
  return result;
}

std::vector<double> log_space(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > 0.0) || count == 0) {
    throw InvalidConfigError("log_space: bounds must be positive and count >= 1");
  }
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = std::pow(10.0, a + (b - a) * static_cast<double>(k) /
                                    static_cast<double>(count - 1));
  }
  return out;
}

std::vector<SweepPoint> uae_sweep(const Dataset& train, const Dataset& test,
                                  std::size_t m, const std::vector<double>& uae_values,
                                  std::size_t trials, std::uint64_t seed,
                                  const CvOptions& options) {
  if (uae_values.empty()) throw InvalidConfigError("uae_sweep: empty u_ae list");
  if (trials < 1) throw InvalidConfigError("uae_sweep: trials must be >= 1");
  const std::size_t points = uae_values.size();
  std::vector<double> medians(points * trials);
  std::vector<double> errors(points * trials);
  const RngStream root(seed);
  parallel_for(points * trials, options.threads, [&](std::size_t u) {
    const std::size_t k = u / trials;
    const std::size_t t = u % trials;
    const GeneratorConfig generator =
        make_generator(MethodFamily::raem1, uae_values[k], options.anchor, options.rae_solver);
    const TrainedNetwork net = fit_network(generator, train, m, root.child(t), options.readout);
    const Matrix& a = net.hidden.weights;
    std::vector<double> mags(a.data(), a.data() + a.size());
    for (double& v : mags) v = std::abs(v);
    medians[u] = median(mags);
    errors[u] = rmse(predict(net, test.x), test.y);
  });

  std::vector<SweepPoint> out(points);
  for (std::size_t k = 0; k < points; ++k) {
    const std::span<const double> med(medians.data() + k * trials, trials);
    const std::span<const double> err(errors.data() + k * trials, trials);
    out[k] = {uae_values[k], mean(med), mean(err), sample_stddev(err)};
  }
  return out;
}

MethodSummary summarize(const std::string& name, const GeneratorConfig& generator,
                        std::size_t m, const std::vector<TrialReport>& reports) {
  if (reports.empty()) throw InvalidInputError("summarize: no trial reports");
  std::vector<double> test;
  std::vector<double> train;
  for (const auto& r : reports) {
    test.push_back(r.rmse_test);
    train.push_back(r.rmse_train);
  }
  MethodSummary s;
  s.name = name;
  s.family = family_name(family_of(generator));
  s.nodes = m;
  s.interval = generator_interval(generator);
  s.trials = reports.size();
  s.mean_rmse = mean(test);
  s.std_rmse = sample_stddev(test);
  s.p10_rmse = percentile(test, 10.0);
  s.median_rmse = median(test);
  s.p90_rmse = percentile(test, 90.0);
  s.min_rmse = *std::min_element(test.begin(), test.end());
  s.max_rmse = *std::max_element(test.begin(), test.end());
  s.mean_train_rmse = mean(train);
  return s;
}

std::vector<PairwiseTest> pairwise_wilcoxon(
    const std::vector<std::string>& names,
    const std::vector<std::vector<TrialReport>>& reports) {
  std::vector<PairwiseTest> tests;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (std::size_t j = i + 1; j < reports.size(); ++j) {
      const std::size_t n = std::min(reports[i].size(), reports[j].size());
      if (n < 6) continue;
      std::vector<double> a(n);
      std::vector<double> b(n);
      for (std::size_t t = 0; t < n; ++t) {
        a[t] = reports[i][t].rmse_test;
        b[t] = reports[j][t].rmse_test;
      }
      tests.push_back({names[i], names[j], wilcoxon_signed_rank(a, b)});
    }
  }
  return tests;
}

Histogram weight_histogram(const std::vector<TrialReport>& reports, std::size_t bins) {
  std::vector<double> pooled;
  for (const auto& r : reports) {
    if (r.weights) pooled.insert(pooled.end(), r.weights->data(),
                                 r.weights->data() + r.weights->size());
  }
  if (pooled.empty()) {
    throw InvalidInputError("weight_histogram: no weight snapshots in reports");
  }
  return make_histogram(pooled, bins);
}

nlohmann::json to_json(const MethodSummary& s) {
  nlohmann::json j = {{"name", s.name},
                      {"family", s.family},
                      {"nodes", s.nodes},
                      {"trials", s.trials},
                      {"rmse_test",
                       {{"mean", s.mean_rmse},
                        {"std", s.std_rmse},
                        {"p10", s.p10_rmse},
                        {"median", s.median_rmse},
                        {"p90", s.p90_rmse},
                        {"min", s.min_rmse},
                        {"max", s.max_rmse}}},
                      {"rmse_train_mean", s.mean_train_rmse}};
  j["interval"] = s.interval ? nlohmann::json(*s.interval) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const PairwiseTest& t) {
  return {{"first", t.first},
          {"second", t.second},
          {"statistic", t.result.statistic},
          {"p_value", t.result.p_value},
          {"effective_n", t.result.effective_n},
          {"exact", t.result.exact}};
}

}  // namespace rfnn
