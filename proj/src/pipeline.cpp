#include "rfnn/pipeline.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "rfnn/error.hpp"
#include "rfnn/serialize.hpp"

namespace rfnn {
namespace {

using nlohmann::json;

constexpr std::uint64_t kProblemStream = 0;
constexpr std::uint64_t kGridStream = 1;
constexpr std::uint64_t kTrialStream = 2;

std::string format_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  if (v.is_number_float()) {
    std::ostringstream out;
    out << std::setprecision(17) << v.get<double>();
    return out.str();
  }
  return v.dump();
}

/// Writes `rows` (objects keyed by `columns`) as <stem>.csv or <stem>.json.
void write_table(const ExperimentConfig& cfg, const std::string& stem,
                 const std::vector<std::string>& columns, const std::vector<json>& rows) {
  std::filesystem::create_directories(cfg.output_dir);
  if (cfg.format == TableFormat::json) {
    std::ofstream out(cfg.output_dir / (stem + ".json"));
    if (!out) throw InvalidInputError("cannot write " + stem + ".json");
    out << json(rows).dump(2) << '\n';
    return;
  }
  std::ofstream out(cfg.output_dir / (stem + ".csv"));
  if (!out) throw InvalidInputError("cannot write " + stem + ".csv");
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << format_cell(row.at(columns[c]));
    }
    out << '\n';
  }
}

void write_summary(const ExperimentConfig& cfg, const json& summary) {
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream out(cfg.output_dir / "summary.json");
  if (!out) throw InvalidInputError("cannot write summary.json");
  out << summary.dump(2) << '\n';
}

json interval_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json cv_json(const CvResult& cv) {
  json table = json::array();
  for (const auto& cell : cv.table) {
    table.push_back({{"nodes", cell.nodes},
                     {"interval", interval_json(cell.interval)},
                     {"mean_rmse", cell.mean_rmse}});
  }
  return {{"best",
           {{"nodes", cv.best.nodes},
            {"interval", interval_json(cv.best.interval)},
            {"mean_rmse", cv.best.mean_rmse}}},
          {"table", table}};
}

std::vector<json> cv_rows(const std::string& method, const CvResult& cv) {
  std::vector<json> rows;
  for (const auto& cell : cv.table) {
    rows.push_back({{"method", method},
                    {"nodes", cell.nodes},
                    {"interval", interval_json(cell.interval)},
                    {"mean_rmse", cell.mean_rmse}});
  }
  return rows;
}

std::vector<json> trial_rows(const std::string& method,
                             const std::vector<TrialReport>& reports) {
  std::vector<json> rows;
  for (const auto& r : reports) {
    rows.push_back({{"method", method},
                    {"trial", r.trial},
                    {"seed", r.seed},
                    {"rmse_train", r.rmse_train},
                    {"rmse_test", r.rmse_test}});
  }
  return rows;
}

std::vector<json> histogram_rows(const std::string& method, const Histogram& h) {
  std::vector<json> rows;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    rows.push_back({{"method", method},
                    {"bin_left", h.edges[k]},
                    {"bin_right", h.edges[k + 1]},
                    {"count", h.counts[k]}});
  }
  return rows;
}

json base_summary(const std::string& command, const ExperimentConfig& cfg,
                  const LoadedProblem& problem) {
  return {{"command", command},
          {"problem", problem.summary},
          {"seed", cfg.seed},
          {"trials", cfg.trials}};
}

TrialOptions trial_options(const ExperimentConfig& cfg, bool keep_weights) {
  TrialOptions opt;
  opt.keep_weights = keep_weights;
  opt.threads = cfg.threads;
  return opt;
}

struct MethodRun {
  ResolvedMethod method;
  std::vector<TrialReport> reports;
};

std::vector<MethodRun> run_all_methods(const ExperimentConfig& cfg,
                                       const LoadedProblem& problem, bool keep_weights) {
  std::vector<MethodRun> runs;
  const std::uint64_t trial_seed = RngStream(cfg.seed).child(kTrialStream).seed();
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    MethodRun run{resolve_method(cfg, i, problem.train), {}};
    run.reports = run_trials(run.method.generator, problem.train, problem.test,
                             run.method.nodes, cfg.trials, trial_seed,
                             trial_options(cfg, keep_weights));
    runs.push_back(std::move(run));
  }
  return runs;
}

json comparison_summary(const std::string& command, const ExperimentConfig& cfg,
                        const LoadedProblem& problem, const std::vector<MethodRun>& runs) {
  json summary = base_summary(command, cfg, problem);
  json methods = json::array();
  json cv = json::object();
  std::vector<std::string> names;
  std::vector<std::vector<TrialReport>> reports;
  for (const auto& run : runs) {
    methods.push_back(to_json(summarize(run.method.name, run.method.generator,
                                        run.method.nodes, run.reports)));
    if (run.method.cv) cv[run.method.name] = cv_json(*run.method.cv);
    names.push_back(run.method.name);
    reports.push_back(run.reports);
  }
  json pairwise = json::array();
  for (const auto& t : pairwise_wilcoxon(names, reports)) pairwise.push_back(to_json(t));
  summary["methods"] = methods;
  summary["pairwise_wilcoxon"] = pairwise;
  summary["cross_validation"] = cv;
  return summary;
}

void write_trials(const ExperimentConfig& cfg, const std::vector<MethodRun>& runs) {
  std::vector<json> rows;
  for (const auto& run : runs) {
    auto r = trial_rows(run.method.name, run.reports);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  write_table(cfg, "trials", {"method", "trial", "seed", "rmse_train", "rmse_test"}, rows);
}

}  // namespace

LoadedProblem load_problem(const ProblemConfig& problem, std::uint64_t seed) {
  const RngStream rng = RngStream(seed).child(kProblemStream);
  LoadedProblem out;
  out.name = problem.name;
  if (problem.kind == ProblemConfig::Kind::benchmark) {
    SampledProblem p = sample_problem(problem.tf, rng, problem.size);
    out.train = std::move(p.train);
    out.test = std::move(p.test);
    out.normalization = std::move(p.normalization);
    out.summary = {{"name", problem.name},
                   {"kind", "benchmark"},
                   {"function", problem.tf.name()},
                   {"n", problem.tf.n},
                   {"train_size", out.train.size()},
                   {"test_size", out.test.size()}};
    return out;
  }
  const Dataset raw = load_csv(problem.path, problem.csv);
  raw.validate();
  auto [train_raw, test_raw] = split_75_25(raw, rng);
  auto [train, spec] = normalize(train_raw);
  out.train = std::move(train);
  out.test = normalize(test_raw, spec).first;
  out.normalization = spec;
  out.summary = dataset_summary(raw, problem.name);
  out.summary["kind"] = "dataset";
  out.summary["train_size"] = out.train.size();
  out.summary["test_size"] = out.test.size();
  return out;
}

ResolvedMethod resolve_method(const ExperimentConfig& cfg, std::size_t method_index,
                              const Dataset& train) {
  const MethodConfig& m = cfg.methods.at(method_index);
  ResolvedMethod out;
  out.name = m.name;
  if (m.fully_specified()) {
    out.nodes = *m.nodes;
    out.generator = m.generator();
    return out;
  }
  GridSearchConfig grid;
  grid.node_counts = m.nodes ? std::vector<std::size_t>{*m.nodes} : cfg.grid.node_counts;
  if (m.interval) {
    grid.interval_grid = {*m.interval};
  } else {
    grid.interval_grid =
        m.interval_grid.empty() ? default_interval_grid(m.family) : m.interval_grid;
  }
  grid.folds = cfg.grid.folds;
  grid.trials_per_cell = cfg.grid.trials_per_cell;
  grid.seed = RngStream(cfg.seed).child(kGridStream).child(method_index).seed();

  CvOptions opt;
  opt.anchor = m.anchor;
  opt.rae_solver = m.rae_solver;
  opt.threads = cfg.threads;
  CvResult cv = cross_validate(grid, m.family, train, opt);
  out.nodes = cv.best.nodes;
  out.generator =
      make_generator(m.family, cv.best.interval.value_or(0.0), m.anchor, m.rae_solver);
  out.cv = std::move(cv);
  return out;
}

json run_fit(const ExperimentConfig& cfg, const std::optional<std::string>& method) {
  cfg.validate();
  std::size_t index = 0;
  if (method) {
    index = cfg.methods.size();
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
      if (cfg.methods[i].name == *method) index = i;
    }
    if (index == cfg.methods.size()) {
      throw InvalidConfigError("no method named '" + *method + "'");
    }
  }
  const LoadedProblem problem = load_problem(cfg.problem, cfg.seed);
  MethodRun run{resolve_method(cfg, index, problem.train), {}};
  const std::uint64_t trial_seed = RngStream(cfg.seed).child(kTrialStream).seed();
  run.reports = run_trials(run.method.generator, problem.train, problem.test,
                           run.method.nodes, cfg.trials, trial_seed,
                           trial_options(cfg, false));

  TrainedNetwork net = fit_network(run.method.generator, problem.train, run.method.nodes,
                                   RngStream(trial_seed).child(0));
  net.normalization = problem.normalization;
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream(cfg.output_dir / "model.json") << serialize_network(net) << '\n';

  const std::vector<MethodRun> runs{run};
  write_trials(cfg, runs);
  json summary = comparison_summary("fit", cfg, problem, runs);
  write_summary(cfg, summary);
  return summary;
}

json run_benchmark(const ExperimentConfig& cfg) {
  cfg.validate();
  const LoadedProblem problem = load_problem(cfg.problem, cfg.seed);
  const auto runs = run_all_methods(cfg, problem, false);
  write_trials(cfg, runs);
  json summary = comparison_summary("benchmark", cfg, problem, runs);
  write_summary(cfg, summary);
  return summary;
}

json run_grid_search(const ExperimentConfig& cfg) {
  cfg.validate();
  const LoadedProblem problem = load_problem(cfg.problem, cfg.seed);
  json summary = base_summary("grid-search", cfg, problem);
  json chosen = json::array();
  json cv = json::object();
  std::vector<json> rows;
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    const ResolvedMethod m = resolve_method(cfg, i, problem.train);
    chosen.push_back({{"name", m.name},
                      {"family", family_name(family_of(m.generator))},
                      {"nodes", m.nodes},
                      {"interval", interval_json(generator_interval(m.generator))}});
    if (m.cv) {
      cv[m.name] = cv_json(*m.cv);
      auto r = cv_rows(m.name, *m.cv);
      rows.insert(rows.end(), r.begin(), r.end());
    }
  }
  summary["methods"] = chosen;
  summary["cross_validation"] = cv;
  write_table(cfg, "cv", {"method", "nodes", "interval", "mean_rmse"}, rows);
  write_summary(cfg, summary);
  return summary;
}

json run_compare(const ExperimentConfig& cfg) {
  cfg.validate();
  const LoadedProblem problem = load_problem(cfg.problem, cfg.seed);
  const auto runs = run_all_methods(cfg, problem, true);
  write_trials(cfg, runs);

  std::vector<json> cv;
  std::vector<json> hist;
  for (const auto& run : runs) {
    if (run.method.cv) {
      auto r = cv_rows(run.method.name, *run.method.cv);
      cv.insert(cv.end(), r.begin(), r.end());
    }
    auto h = histogram_rows(run.method.name, weight_histogram(run.reports, cfg.histogram_bins));
    hist.insert(hist.end(), h.begin(), h.end());
  }
  write_table(cfg, "cv", {"method", "nodes", "interval", "mean_rmse"}, cv);
  write_table(cfg, "histogram", {"method", "bin_left", "bin_right", "count"}, hist);
  json summary = comparison_summary("compare", cfg, problem, runs);
  write_summary(cfg, summary);
  return summary;
}

json run_uae_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const LoadedProblem problem = load_problem(cfg.problem, cfg.seed);
  const MethodConfig* raem = nullptr;
  for (const auto& m : cfg.methods) {
    if (m.family == MethodFamily::raem1) raem = &m;
  }
  CvOptions opt;
  opt.threads = cfg.threads;
  if (raem) {
    opt.anchor = raem->anchor;
    opt.rae_solver = raem->rae_solver;
  }
  const std::uint64_t trial_seed = RngStream(cfg.seed).child(kTrialStream).seed();
  const auto points = uae_sweep(problem.train, problem.test, cfg.sweep.nodes,
                                cfg.sweep.uae_values, cfg.trials, trial_seed, opt);
  std::vector<json> rows;
  std::size_t best = 0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    rows.push_back({{"u_ae", points[k].u_ae},
                    {"median_abs_v", points[k].median_abs_weight},
                    {"mean_rmse", points[k].mean_rmse},
                    {"std_rmse", points[k].std_rmse}});
    if (points[k].mean_rmse < points[best].mean_rmse) best = k;
  }
  write_table(cfg, "sweep", {"u_ae", "median_abs_v", "mean_rmse", "std_rmse"}, rows);
  json summary = base_summary("uae-sweep", cfg, problem);
  summary["nodes"] = cfg.sweep.nodes;
  summary["minimizer"] = rows[best];
  summary["points"] = rows;
  write_summary(cfg, summary);
  return summary;
}

json run_emit(const ExperimentConfig& cfg) {
  const LoadedProblem problem = load_problem(cfg.problem, cfg.seed);
  std::filesystem::create_directories(cfg.output_dir);
  write_csv(problem.train, cfg.output_dir / "train.csv");
  write_csv(problem.test, cfg.output_dir / "test.csv");
  json summary = {{"command", "emit"},
                  {"problem", problem.summary},
                  {"seed", cfg.seed},
                  {"normalization", normalization_to_json(problem.normalization)}};
  write_summary(cfg, summary);
  return summary;
}

json run_histogram(const ExperimentConfig& cfg) {
  cfg.validate();
  const LoadedProblem problem = load_problem(cfg.problem, cfg.seed);
  const auto runs = run_all_methods(cfg, problem, true);
  std::vector<json> rows;
  json summary = base_summary("histogram", cfg, problem);
  json methods = json::array();
  for (const auto& run : runs) {
    auto h = histogram_rows(run.method.name, weight_histogram(run.reports, cfg.histogram_bins));
    rows.insert(rows.end(), h.begin(), h.end());
    methods.push_back({{"name", run.method.name},
                       {"nodes", run.method.nodes},
                       {"interval", interval_json(generator_interval(run.method.generator))},
                       {"weights", run.method.nodes * problem.train.input_dim() * cfg.trials}});
  }
  summary["methods"] = methods;
  summary["bins"] = cfg.histogram_bins;
  write_table(cfg, "histogram", {"method", "bin_left", "bin_right", "count"}, rows);
  write_summary(cfg, summary);
  return summary;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvalidConfigError*>(&e)) return 2;
  if (dynamic_cast<const NumericFailureError*>(&e) ||
      dynamic_cast<const DegenerateNodeError*>(&e)) {
    return 4;
  }
  if (dynamic_cast<const InvalidInputError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const FormatError*>(&e)) {
    return 3;
  }
  return 1;
}

}  // namespace rfnn
