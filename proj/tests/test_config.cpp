#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "rfnn/error.hpp"
#include "rfnn/pipeline.hpp"
#include "rfnn/serialize.hpp"

using namespace rfnn;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rfnn_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json small_config(const fs::path& out) {
  return {{"problem", {{"kind", "benchmark"}, {"function", "tf1"}, {"n", 2}, {"size", 300}}},
          {"methods",
           {{{"name", "RalphaM"}, {"family", "ralpham"}, {"nodes", 40}, {"interval", 80}},
            {{"name", "RaM"}, {"family", "ram"}, {"nodes", 40}, {"interval", 5}}}},
          {"trials", 6},
          {"seed", 3},
          {"histogram_bins", 8},
          {"output_dir", out.string()}};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RFNN_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_json(const fs::path& path, const json& doc) {
  std::ofstream(path) << doc.dump(2);
  return path;
}

}  // namespace

TEST_CASE("config defaults") {
  const ExperimentConfig cfg = parse_config(
      json{{"problem", {{"function", "tf2"}}}, {"methods", {{{"family", "raem1"}}}}});
  CHECK(cfg.problem.kind == ProblemConfig::Kind::benchmark);
  CHECK(cfg.problem.tf.id == TargetFunctionId::tf2);
  CHECK(cfg.problem.tf.n == 2);
  CHECK(cfg.problem.name == "tf2_n2");
  CHECK(cfg.methods[0].name == "raem1");
  CHECK_FALSE(cfg.methods[0].fully_specified());
  CHECK(cfg.trials == 100);
  CHECK(cfg.seed == 1);
  CHECK(cfg.threads == 1);
  CHECK(cfg.grid.folds == 5);
  CHECK(cfg.grid.trials_per_cell == 3);
  CHECK(cfg.sweep.nodes == 25);
  CHECK(cfg.sweep.uae_values.size() == 25);
  CHECK(cfg.format == TableFormat::csv);
  CHECK(cfg.output_dir == fs::path("out"));
}

TEST_CASE("default interval grids") {
  const auto ram = default_interval_grid(MethodFamily::ram);
  CHECK(ram.size() == 13);
  CHECK(ram.front() == doctest::Approx(1e-2));
  CHECK(ram.back() == doctest::Approx(1e2));
  const auto u = default_interval_grid(MethodFamily::raem1);
  CHECK(u.size() == 25);
  CHECK(u.front() == doctest::Approx(1e-5));
  CHECK(u.back() == doctest::Approx(10.0));
  CHECK(default_interval_grid(MethodFamily::ralpham) ==
        std::vector<double>{10, 20, 30, 40, 50, 60, 70, 80, 90});
  CHECK(default_interval_grid(MethodFamily::raem4).empty());
}

TEST_CASE("full config parse") {
  const json doc = {
      {"problem",
       {{"kind", "dataset"}, {"path", "data/stock.dat"}, {"delimiter", ";"}, {"header", true},
        {"target_column", 0}}},
      {"methods",
       {{{"name", "a"}, {"family", "raem1"}, {"nodes", 25}, {"interval", 0.1}, {"anchor", "cluster"},
         {"rae_ridge_lambda", 1e-6}},
        {{"name", "b"}, {"family", "ralpham"}, {"interval_grid", {30, 60}}}}},
      {"grid", {{"node_counts", {10, 20}}, {"folds", 4}, {"trials_per_cell", 2}}},
      {"sweep", {{"nodes", 30}, {"uae_values", {{"from", 0.01}, {"to", 1.0}, {"count", 3}}}}},
      {"format", "json"}};
  const ExperimentConfig cfg = parse_config(doc);
  CHECK(cfg.problem.kind == ProblemConfig::Kind::dataset);
  CHECK(cfg.problem.name == "stock");
  CHECK(cfg.problem.csv.delimiter == ';');
  CHECK(cfg.problem.csv.header);
  CHECK(cfg.problem.csv.target_column == 0u);
  CHECK(cfg.methods[0].fully_specified());
  CHECK(std::holds_alternative<ClusterPrototype>(cfg.methods[0].anchor));
  CHECK(cfg.methods[0].rae_solver.ridge_lambda == 1e-6);
  const GeneratorConfig g = cfg.methods[0].generator();
  REQUIRE(std::holds_alternative<RaemConfig>(g));
  CHECK(std::get<Raem1>(std::get<RaemConfig>(g).variant).u_ae == 0.1);
  CHECK(cfg.methods[1].interval_grid == std::vector<double>{30, 60});
  CHECK(cfg.grid.node_counts == std::vector<std::size_t>{10, 20});
  CHECK(cfg.grid.folds == 4);
  CHECK(cfg.sweep.nodes == 30);
  REQUIRE(cfg.sweep.uae_values.size() == 3);
  CHECK(cfg.sweep.uae_values[1] == doctest::Approx(0.1));
  CHECK(cfg.format == TableFormat::json);
  CHECK(anchor_name(cfg.methods[0].anchor) == "cluster");
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config(json::object()), InvalidConfigError);
  CHECK_THROWS_AS(parse_config(json{{"problem", {{"kind", "other"}}}, {"methods", json::array()}}),
                  InvalidConfigError);
  CHECK_THROWS_AS(parse_config(json{{"problem", json::object()}, {"methods", {{{"family", "xyz"}}}}}),
                  InvalidConfigError);
  CHECK_THROWS_AS(
      parse_config(json{{"problem", json::object()}, {"methods", {{{"family", "ram"}, {"anchor", "x"}}}}}),
      InvalidConfigError);
  CHECK_THROWS_AS(
      parse_config(json{{"problem", json::object()}, {"methods", {{{"family", "ram"}}}}, {"format", "xml"}}),
      InvalidConfigError);
  CHECK_THROWS_AS(parse_config(json{{"problem", json::object()}, {"methods", {{{"family", "ram"}}}}, {"trials", "many"}}),
                  InvalidConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/rfnn.json"), InvalidConfigError);

  ExperimentConfig cfg = parse_config(small_config("out"));
  CHECK_NOTHROW(cfg.validate());
  cfg.methods[1].name = "RalphaM";
  CHECK_THROWS_AS(cfg.validate(), InvalidConfigError);
  cfg = parse_config(small_config("out"));
  cfg.methods[0].interval = 120.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfigError);
  cfg = parse_config(small_config("out"));
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfigError);
  cfg = parse_config(small_config("out"));
  cfg.methods.clear();
  CHECK_THROWS_AS(cfg.validate(), InvalidConfigError);
}

TEST_CASE("exit codes by error kind") {
  CHECK(exit_code_for(InvalidConfigError("x")) == 2);
  CHECK(exit_code_for(InvalidInputError("x")) == 3);
  CHECK(exit_code_for(ParseError("x", 1, 1)) == 3);
  CHECK(exit_code_for(FormatError("x")) == 3);
  CHECK(exit_code_for(NumericFailureError("x", 0)) == 4);
  CHECK(exit_code_for(DegenerateNodeError("x")) == 4);
  CHECK(exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("benchmark writes deterministic outputs") {
  const fs::path out = scratch("bench");
  ExperimentConfig cfg = parse_config(small_config(out));
  const json first = run_benchmark(cfg);
  const std::string summary1 = slurp(out / "summary.json");
  const std::string trials1 = slurp(out / "trials.csv");
  cfg.threads = 4;
  run_benchmark(cfg);
  CHECK(slurp(out / "summary.json") == summary1);
  CHECK(slurp(out / "trials.csv") == trials1);

  CHECK(first.at("methods").size() == 2);
  CHECK(first.at("pairwise_wilcoxon").size() == 1);
  CHECK(first.at("problem").at("train_size") == 300);
  const std::string header = trials1.substr(0, trials1.find('\n'));
  CHECK(header == "method,trial,seed,rmse_train,rmse_test");
  CHECK(std::count(trials1.begin(), trials1.end(), '\n') == 13);

  cfg.format = TableFormat::json;
  run_benchmark(cfg);
  const json rows = json::parse(slurp(out / "trials.json"));
  CHECK(rows.size() == 12);
  CHECK(rows[0].contains("rmse_test"));
}

TEST_CASE("methods share paired trial seeds") {
  const fs::path out = scratch("paired");
  const json summary = run_benchmark(parse_config(small_config(out)));
  std::istringstream lines(slurp(out / "trials.csv"));
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> seeds;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    seeds.push_back(cells.at(2));
  }
  REQUIRE(seeds.size() == 12);
  for (std::size_t t = 0; t < 6; ++t) CHECK(seeds[t] == seeds[t + 6]);
}

TEST_CASE("grid search, compare, histogram, sweep, emit and fit") {
  const fs::path out = scratch("drivers");
  json doc = small_config(out);
  doc["methods"] = {{{"name", "RalphaM"}, {"family", "ralpham"}, {"interval_grid", {40, 80}}},
                    {{"name", "RAEM4"}, {"family", "raem4"}, {"nodes", 20}}};
  doc["grid"] = {{"node_counts", {10, 20}}, {"folds", 3}, {"trials_per_cell", 1}};
  doc["sweep"] = {{"nodes", 10}, {"uae_values", {0.05, 0.5}}};
  const ExperimentConfig cfg = parse_config(doc);

  const json gs = run_grid_search(cfg);
  CHECK(gs.at("methods").size() == 2);
  CHECK(gs.at("cross_validation").contains("RalphaM"));
  CHECK_FALSE(gs.at("cross_validation").contains("RAEM4"));
  CHECK(slurp(out / "cv.csv").rfind("method,nodes,interval,mean_rmse\n", 0) == 0);

  const json cmp = run_compare(cfg);
  CHECK(cmp.at("methods").size() == 2);
  for (const char* f : {"summary.json", "trials.csv", "cv.csv", "histogram.csv"}) {
    CHECK(fs::exists(out / f));
  }
  CHECK(slurp(out / "histogram.csv").rfind("method,bin_left,bin_right,count\n", 0) == 0);

  const json hist = run_histogram(cfg);
  CHECK(hist.at("bins") == 8);
  CHECK(hist.at("methods")[1].at("weights") == 20 * 2 * 6);

  const json sweep = run_uae_sweep(cfg);
  CHECK(sweep.at("points").size() == 2);
  CHECK(slurp(out / "sweep.csv").rfind("u_ae,median_abs_v,mean_rmse,std_rmse\n", 0) == 0);

  const json emit = run_emit(cfg);
  CHECK(emit.at("problem").at("train_size") == 300);
  const Dataset train = load_csv(out / "train.csv", CsvOptions{',', true, {}});
  CHECK(train.size() == 300);
  CHECK(train.y.minCoeff() == -1.0);

  run_fit(cfg, std::string("RAEM4"));
  const TrainedNetwork net = deserialize_network(slurp(out / "model.json"));
  CHECK(net.hidden.node_count() == 20);
  CHECK(net.normalization.output.target.lo == -1.0);
  CHECK_THROWS_AS(run_fit(cfg, std::string("missing")), InvalidConfigError);
}

TEST_CASE("dataset problems split then normalize on the training part") {
  const fs::path dir = scratch("dataset");
  std::ofstream data(dir / "toy.dat");
  data << "@relation toy\n@attribute a real\n@attribute b real\n@attribute y real\n@data\n";
  RngStream rng(4);
  for (int l = 0; l < 40; ++l) {
    const double a = rng.uniform(-3, 3);
    const double b = rng.uniform(10, 20);
    data << a << ", " << b << ", " << a * b << '\n';
  }
  data.close();
  ProblemConfig p;
  p.kind = ProblemConfig::Kind::dataset;
  p.path = dir / "toy.dat";
  p.name = "toy";
  const LoadedProblem loaded = load_problem(p, 9);
  CHECK(loaded.train.size() == 30);
  CHECK(loaded.test.size() == 10);
  CHECK(loaded.train.x.minCoeff() == 0.0);
  CHECK(loaded.train.x.maxCoeff() == 1.0);
  CHECK(loaded.summary.at("N") == 40);
  CHECK(loaded.summary.at("columns")[0].at("name") == "a");

  p.path = dir / "missing.dat";
  CHECK_THROWS_AS(load_problem(p, 9), InvalidInputError);
}

TEST_CASE("command-line interface") {
  const fs::path out = scratch("cli");
  const fs::path cfg_path = write_json(out / "cfg.json", small_config(out / "a"));

  CHECK(run_cli("benchmark --config " + cfg_path.string()) == 0);
  CHECK(fs::exists(out / "a" / "summary.json"));
  CHECK(run_cli("benchmark --config " + cfg_path.string() + " --out " + (out / "b").string() +
                " --threads 3") == 0);
  CHECK(slurp(out / "a" / "summary.json") == slurp(out / "b" / "summary.json"));

  CHECK(run_cli("benchmark --config " + cfg_path.string() + " --out " + (out / "c").string() +
                " --seed 11 --trials 7 --nodes 15 --method RaM --format json") == 0);
  const json c = json::parse(slurp(out / "c" / "summary.json"));
  CHECK(c.at("seed") == 11);
  CHECK(c.at("trials") == 7);
  CHECK(c.at("methods").size() == 1);
  CHECK(c.at("methods")[0].at("nodes") == 15);
  CHECK(fs::exists(out / "c" / "trials.json"));

  CHECK(run_cli("emit --config " + cfg_path.string() + " --out " + (out / "d").string()) == 0);
  CHECK(fs::exists(out / "d" / "train.csv"));

  // Exit codes: usage and config errors 2, data errors 3.
  CHECK(run_cli("") == 2);
  CHECK(run_cli("benchmark") == 2);
  CHECK(run_cli("benchmark --config " + (out / "nope.json").string()) == 2);
  CHECK(run_cli("benchmark --config " + cfg_path.string() + " --method nobody") == 2);
  CHECK(run_cli("benchmark --config " + cfg_path.string() + " --format xml") == 2);

  json bad = small_config(out / "e");
  bad["methods"][0]["interval"] = 100;
  CHECK(run_cli("benchmark --config " + write_json(out / "bad.json", bad).string()) == 2);

  json missing = small_config(out / "f");
  missing["problem"] = {{"kind", "dataset"}, {"path", (out / "absent.csv").string()}};
  CHECK(run_cli("benchmark --config " + write_json(out / "missing.json", missing).string()) == 3);

  std::ofstream(out / "ragged.csv") << "1,2,3\n4,5\n";
  json ragged = small_config(out / "g");
  ragged["problem"] = {{"kind", "dataset"}, {"path", (out / "ragged.csv").string()}};
  CHECK(run_cli("benchmark --config " + write_json(out / "ragged.json", ragged).string()) == 3);
}
