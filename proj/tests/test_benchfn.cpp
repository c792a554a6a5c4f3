#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "rfnn/benchfn.hpp"
#include "rfnn/error.hpp"
#include "rfnn/stats.hpp"

using namespace rfnn;

namespace {

Vector point(std::initializer_list<double> v) {
  Vector p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

bool same_bits(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

}  // namespace

TEST_CASE("target functions at known points") {
  const TargetFunction tf1{TargetFunctionId::tf1, 3};
  const TargetFunction tf2{TargetFunctionId::tf2, 2};
  const TargetFunction tf3{TargetFunctionId::tf3, 1};
  CHECK(evaluate_tf(tf1, Vector::Zero(3)) == 0.0);
  CHECK(evaluate_tf(tf2, Vector::Zero(2)) == 0.0);
  CHECK(std::abs(evaluate_tf(tf3, point({420.9687}))) < 1e-4);

  // Hand evaluation of each formula at an interior point.
  const double x = 0.7;
  CHECK(evaluate_tf(TargetFunction{TargetFunctionId::tf1, 1}, point({x})) ==
        doctest::Approx(std::sin(20.0 * std::exp(x)) * x * x).epsilon(1e-15));
  const double a = 1.1;
  const double b = 2.3;
  const double pi = std::numbers::pi;
  const double tf2_ref = -(std::sin(a) * std::pow(std::sin(a * a / pi), 20) +
                           std::sin(b) * std::pow(std::sin(2.0 * b * b / pi), 20));
  CHECK(evaluate_tf(tf2, point({a, b})) == doctest::Approx(tf2_ref).epsilon(1e-14));
  const double tf3_ref = 2 * 418.9829 - (-250.0 * std::sin(std::sqrt(250.0)) + 100.0 * std::sin(10.0));
  CHECK(evaluate_tf(TargetFunction{TargetFunctionId::tf3, 2}, point({-250.0, 100.0})) ==
        doctest::Approx(tf3_ref).epsilon(1e-14));
}

TEST_CASE("domain and arity are enforced") {
  const TargetFunction tf1{TargetFunctionId::tf1, 2};
  CHECK_THROWS_AS(evaluate_tf(tf1, point({0.5})), InvalidInputError);
  CHECK_THROWS_AS(evaluate_tf(tf1, point({0.5, 1.5})), InvalidInputError);
  CHECK_THROWS_AS(evaluate_tf(TargetFunction{TargetFunctionId::tf3, 1}, point({-501.0})),
                  InvalidInputError);
  CHECK_THROWS_AS(evaluate_tf(tf1, point({0.5, std::nan("")})), InvalidInputError);
  CHECK_THROWS_AS(parse_target_function("tf9"), InvalidConfigError);
  CHECK(parse_target_function("TF2") == TargetFunctionId::tf2);
}

TEST_CASE("default sample sizes") {
  CHECK(default_sample_size(1) == 5000u);
  CHECK(default_sample_size(2) == 5000u);
  CHECK(default_sample_size(5) == 20000u);
  CHECK(default_sample_size(10) == 50000u);
  CHECK_FALSE(default_sample_size(3).has_value());
  CHECK_THROWS_AS(sample_problem(TargetFunction{TargetFunctionId::tf1, 3}, RngStream(1)),
                  InvalidConfigError);
  CHECK(sample_problem(TargetFunction{TargetFunctionId::tf1, 3}, RngStream(1), 40).train.size() == 40);
}

TEST_CASE("sampled problem shapes and normalization") {
  for (const TargetFunctionId id : {TargetFunctionId::tf1, TargetFunctionId::tf2, TargetFunctionId::tf3}) {
    const TargetFunction tf{id, 2};
    const SampledProblem p = sample_problem(tf, RngStream(2));
    CHECK(p.train.size() == 5000);
    CHECK(p.test.size() == 5000);
    CHECK(p.train.input_dim() == 2);
    CHECK(p.train.x.minCoeff() == 0.0);
    CHECK(p.train.x.maxCoeff() == 1.0);
    CHECK(p.train.y.minCoeff() == -1.0);
    CHECK(p.train.y.maxCoeff() == 1.0);
    const Range dom = tf.domain();
    CHECK(p.raw_train.x.minCoeff() >= dom.lo);
    CHECK(p.raw_train.x.maxCoeff() <= dom.hi);

    CHECK(same_bits(p.normalization.apply_inputs(p.raw_train.x), p.train.x));
    CHECK(same_bits(p.normalization.apply_output(p.raw_train.y), p.train.y));
    CHECK(same_bits(p.normalization.apply_inputs(p.raw_test.x), p.test.x));

    const Matrix back = p.normalization.invert_inputs(p.train.x);
    const double scale = std::max(std::abs(dom.lo), std::abs(dom.hi));
    CHECK((back - p.raw_train.x).cwiseAbs().maxCoeff() <= 1e-12 * scale);
    const Vector yback = p.normalization.invert_output(p.train.y);
    CHECK((yback - p.raw_train.y).cwiseAbs().maxCoeff() <=
          1e-12 * std::max(1.0, p.raw_train.y.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("sampling is seed-deterministic with disjoint train and test streams") {
  const TargetFunction tf{TargetFunctionId::tf1, 2};
  const SampledProblem a = sample_problem(tf, RngStream(3), 300);
  const SampledProblem b = sample_problem(tf, RngStream(3), 300);
  const SampledProblem c = sample_problem(tf, RngStream(4), 300);
  CHECK(same_bits(a.train.x, b.train.x));
  CHECK(same_bits(a.test.y, b.test.y));
  CHECK_FALSE(same_bits(a.train.x, c.train.x));
  CHECK_FALSE(same_bits(a.raw_train.x, a.raw_test.x));
}

TEST_CASE("TF3 varies more near the border than in the centre") {
  const TargetFunction tf{TargetFunctionId::tf3, 2};
  const Dataset raw = sample_raw(tf, 40000, RngStream(5));
  std::vector<double> centre;
  std::vector<double> border;
  for (Eigen::Index l = 0; l < raw.x.rows(); ++l) {
    const bool inner = std::abs(raw.x(l, 0)) <= 250.0 && std::abs(raw.x(l, 1)) <= 250.0;
    (inner ? centre : border).push_back(raw.y[l]);
  }
  const double sc = sample_stddev(centre);
  const double sb = sample_stddev(border);
  CHECK(sb * sb / (sc * sc) > 1.0);
}
