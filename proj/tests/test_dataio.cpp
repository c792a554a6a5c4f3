#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "rfnn/dataio.hpp"
#include "rfnn/error.hpp"

using namespace rfnn;

namespace {

Dataset indexed(std::size_t n) {
  Dataset ds;
  ds.x.resize(static_cast<Eigen::Index>(n), 2);
  ds.y.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto l = static_cast<Eigen::Index>(i);
    ds.x(l, 0) = static_cast<double>(i);
    ds.x(l, 1) = 2.0 * static_cast<double>(i);
    ds.y[l] = static_cast<double>(i);
  }
  return ds;
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("three rows with two features") {
  const auto path = temp_file("rfnn_three.csv", "1,2,3\n4,5,6\n7,8,9\n");
  const Dataset ds = load_csv(path);
  CHECK(ds.size() == 3);
  CHECK(ds.input_dim() == 2);
  CHECK(ds.x(1, 0) == 4.0);
  CHECK(ds.x(2, 1) == 8.0);
  CHECK(ds.y[2] == 9.0);
  std::filesystem::remove(path);
}

TEST_CASE("header row and target column") {
  CsvOptions opt;
  opt.header = true;
  const Dataset ds = parse_csv("a,b,target\n1,2,3\n4,5,6\n", opt);
  CHECK(ds.size() == 2);
  CHECK(ds.feature_names == std::vector<std::string>{"a", "b"});
  CHECK(ds.target_name == "target");

  opt.target_column = 0;
  const Dataset first = parse_csv("t,u,v\n1,2,3\n4,5,6\n", opt);
  CHECK(first.y[1] == 4.0);
  CHECK(first.x(1, 1) == 6.0);
  CHECK(first.target_name == "t");

  opt.target_column = 5;
  CHECK_THROWS_AS(parse_csv("t,u,v\n1,2,3\n", opt), InvalidInputError);
}

TEST_CASE("whitespace and semicolon delimiters") {
  CsvOptions ws;
  ws.delimiter = ' ';
  const Dataset a = parse_csv("1  2\t3\n  4 5 6  \n", ws);
  CHECK(a.size() == 2);
  CHECK(a.x(1, 1) == 5.0);
  CsvOptions semi;
  semi.delimiter = ';';
  CHECK(parse_csv("1;2\n3;4\n", semi).y[1] == 4.0);
}

TEST_CASE("KEEL headers are skipped and attribute names kept") {
  const std::string text =
      "@relation tiny\n"
      "@attribute Company1 real [1.0, 9.0]\n"
      "@attribute Company2 real [0.0, 5.0]\n"
      "@attribute Company10 real [0.0, 2.0]\n"
      "@inputs Company1, Company2\n"
      "@outputs Company10\n"
      "@data\n"
      "1.5, 2.5, 0.5\n"
      "3.0, 4.0, 1.0\n";
  const Dataset ds = parse_csv(text);
  CHECK(ds.size() == 2);
  CHECK(ds.input_dim() == 2);
  CHECK(ds.feature_names == std::vector<std::string>{"Company1", "Company2"});
  CHECK(ds.target_name == "Company10");
  CHECK(ds.x(1, 1) == 4.0);
}

TEST_CASE("malformed tables") {
  CHECK_THROWS_AS(parse_csv("1,2,3\n4,5\n"), FormatError);
  CHECK_THROWS_AS(parse_csv(""), FormatError);
  CHECK_THROWS_AS(parse_csv("1\n2\n"), FormatError);
  try {
    parse_csv("1,2,3\n4,abc,6\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.row() == 2);
    CHECK(e.column() == 2);
    CHECK(std::string(e.what()).find("line 2, column 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_csv("1,2,3\n4,,6\n"), ParseError);
  CHECK_THROWS_AS(load_csv("/nonexistent/rfnn.csv"), InvalidInputError);
}

TEST_CASE("75/25 split sizes") {
  auto [tr100, te100] = split_75_25(indexed(100), RngStream(1));
  CHECK(tr100.size() == 75);
  CHECK(te100.size() == 25);
  auto [tr209, te209] = split_75_25(indexed(209), RngStream(1));
  CHECK(tr209.size() == 157);
  CHECK(te209.size() == 52);
  auto [tr6, te6] = split_75_25(indexed(6), RngStream(1));
  CHECK(tr6.size() == 5);  // 4.5 rounds up
  CHECK(te6.size() == 1);
  CHECK_THROWS_AS(split_75_25(indexed(3), RngStream(1)), InvalidInputError);
}

TEST_CASE("split is a partition and seed-deterministic") {
  const Dataset ds = indexed(100);
  auto [train, test] = split_75_25(ds, RngStream(7));
  std::set<double> seen;
  for (Eigen::Index l = 0; l < train.y.size(); ++l) seen.insert(train.y[l]);
  for (Eigen::Index l = 0; l < test.y.size(); ++l) CHECK(seen.insert(test.y[l]).second);
  CHECK(seen.size() == 100);
  for (Eigen::Index l = 0; l < train.y.size(); ++l) {
    CHECK(train.x(l, 0) == train.y[l]);
    CHECK(train.x(l, 1) == 2.0 * train.y[l]);
  }

  auto [again, again_test] = split_75_25(ds, RngStream(7));
  CHECK(again.y == train.y);
  auto [other, other_test] = split_75_25(ds, RngStream(8));
  CHECK(other.y != train.y);
}

TEST_CASE("normalize to the unit interval") {
  Dataset ds;
  ds.x.resize(3, 3);
  ds.x << -10, 5, 0.25,
           30, 5, 0.5,
           10, 5, 1.0;
  ds.y.resize(3);
  ds.y << 0, 0.5, 1;
  auto [norm, spec] = normalize(ds);
  CHECK(norm.x(0, 0) == 0.0);
  CHECK(norm.x(1, 0) == 1.0);
  CHECK(norm.x(2, 0) == 0.5);
  CHECK((norm.x.col(1).array() == 0.5).all());
  CHECK((norm.y - ds.y).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(norm.size() == 3);

  Dataset more = ds;
  more.x(0, 0) = 50.0;
  auto [applied, same] = normalize(more, spec);
  CHECK(applied.x(0, 0) == doctest::Approx(1.5));
  CHECK(same.inputs[0].source_min == -10.0);
}

TEST_CASE("dataset summary and CSV export") {
  Dataset ds = parse_csv("a,b,y\n1,2,3\n4,-5,6\n", CsvOptions{',', true, {}});
  const auto j = dataset_summary(ds, "tiny");
  CHECK(j.at("N") == 2);
  CHECK(j.at("n") == 2);
  CHECK(j.at("columns")[1].at("name") == "b");
  CHECK(j.at("columns")[1].at("min") == -5.0);
  CHECK(j.at("target").at("max") == 6.0);

  ds.y[0] = 0.1 + 0.2;
  const auto path = std::filesystem::temp_directory_path() / "rfnn_export.csv";
  write_csv(ds, path);
  const Dataset back = load_csv(path, CsvOptions{',', true, {}});
  CHECK(back.feature_names == std::vector<std::string>{"x1", "x2"});
  CHECK(back.y[0] == ds.y[0]);
  CHECK(back.x == ds.x);
  std::filesystem::remove(path);
}

TEST_CASE("dataset validation") {
  Dataset ds = indexed(4);
  CHECK_NOTHROW(ds.validate());
  ds.y.resize(3);
  CHECK_THROWS_AS(ds.validate(), InvalidInputError);
  CHECK_THROWS_AS(Dataset{}.validate(), InvalidInputError);
}
