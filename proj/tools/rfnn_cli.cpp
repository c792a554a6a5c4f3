// Command-line front end for the randomized FNN experiments.
//
//   rfnn <subcommand> --config cfg.json [--seed S] [--trials T] [--nodes M]
//        [--method NAME] [--out DIR] [--format csv|json] [--threads K]
//
// Subcommands: fit, benchmark, grid-search, uae-sweep, compare, emit,
// histogram. Exit codes: 0 success, 2 config error, 3 data error,
// 4 numeric failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rfnn/error.hpp"
#include "rfnn/pipeline.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> nodes;
  std::optional<std::string> method;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::size_t> threads;
};

void add_common_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Experiment config (JSON)")->required();
  cmd->add_option("--seed", o.seed, "Root random seed");
  cmd->add_option("--trials", o.trials, "Trials per method");
  cmd->add_option("--nodes", o.nodes, "Hidden node count (all methods, or the sweep)");
  cmd->add_option("--method", o.method, "Restrict to the named method");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--format", o.format, "Table format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", o.threads, "Worker threads");
}

rfnn::ExperimentConfig resolve_config(const Overrides& o, const std::string& command) {
  rfnn::ExperimentConfig cfg = rfnn::load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.trials) cfg.trials = *o.trials;
  if (o.nodes) {
    if (command == "uae-sweep") {
      cfg.sweep.nodes = *o.nodes;
    } else {
      for (auto& m : cfg.methods) m.nodes = *o.nodes;
    }
  }
  if (o.method && command != "fit") {
    std::erase_if(cfg.methods, [&](const auto& m) { return m.name != *o.method; });
    if (cfg.methods.empty()) {
      throw rfnn::InvalidConfigError("no method named '" + *o.method + "'");
    }
  }
  if (o.out) cfg.output_dir = *o.out;
  if (o.format) cfg.format = *o.format == "json" ? rfnn::TableFormat::json : rfnn::TableFormat::csv;
  if (o.threads) cfg.threads = *o.threads;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized learning of single-hidden-layer regression networks"};
  app.require_subcommand(1);

  Overrides o;
  const char* commands[] = {"fit",     "benchmark", "grid-search", "uae-sweep",
                            "compare", "emit",      "histogram"};
  const char* help[] = {
      "Train and evaluate one configured method",
      "Run fixed-hyperparameter trials of every method on a target function",
      "Select nodes and interval bounds by k-fold cross-validation",
      "Sweep the autoencoder interval and record median |v| and RMSE",
      "Cross-validate, run trials, test pairwise and histogram weights",
      "Write the sampled, normalized train/test sets as CSV",
      "Pool hidden weights over trials into a histogram"};
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    add_common_flags(app.add_subcommand(commands[i], help[i]), o);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const rfnn::ExperimentConfig cfg = resolve_config(o, command);
    nlohmann::json summary;
    if (command == "fit") {
      summary = rfnn::run_fit(cfg, o.method);
    } else if (command == "benchmark") {
      summary = rfnn::run_benchmark(cfg);
    } else if (command == "grid-search") {
      summary = rfnn::run_grid_search(cfg);
    } else if (command == "uae-sweep") {
      summary = rfnn::run_uae_sweep(cfg);
    } else if (command == "compare") {
      summary = rfnn::run_compare(cfg);
    } else if (command == "emit") {
      summary = rfnn::run_emit(cfg);
    } else {
      summary = rfnn::run_histogram(cfg);
    }
    std::cout << "wrote " << (cfg.output_dir / "summary.json").string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "rfnn " << command << ": " << e.what() << '\n';
    return rfnn::exit_code_for(e);
  }
}
