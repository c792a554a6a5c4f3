#include "rfnn/benchfn.hpp"

#include <cmath>
#include <numbers>

#include "rfnn/error.hpp"

namespace rfnn {

Range TargetFunction::domain() const {
  switch (id) {
    case TargetFunctionId::tf1: return {0.0, 1.0};
    case TargetFunctionId::tf2: return {0.0, std::numbers::pi};
    case TargetFunctionId::tf3: return {-500.0, 500.0};
  }
  return {0.0, 1.0};
}

std::string TargetFunction::name() const {
  switch (id) {
    case TargetFunctionId::tf1: return "tf1";
    case TargetFunctionId::tf2: return "tf2";
    case TargetFunctionId::tf3: return "tf3";
  }
  return "unknown";
}

TargetFunctionId parse_target_function(const std::string& name) {
  if (name == "tf1" || name == "TF1") return TargetFunctionId::tf1;
  if (name == "tf2" || name == "TF2") return TargetFunctionId::tf2;
  if (name == "tf3" || name == "TF3") return TargetFunctionId::tf3;
  throw InvalidConfigError("unknown target function '" + name + "'");
}

double evaluate_tf(const TargetFunction& tf, const Eigen::Ref<const Vector>& x) {
  if (static_cast<std::size_t>(x.size()) != tf.n) {
    throw InvalidInputError("evaluate_tf: expected " + std::to_string(tf.n) +
                            " arguments");
  }
  const Range dom = tf.domain();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= dom.lo && x[i] <= dom.hi)) {
      throw InvalidInputError("evaluate_tf: argument outside the " + tf.name() +
                              " domain");
    }
  }
  double s = 0.0;
  switch (tf.id) {
    case TargetFunctionId::tf1:
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        s += std::sin(20.0 * std::exp(x[j])) * x[j] * x[j];
      }
      return s;
    case TargetFunctionId::tf2:
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double i = static_cast<double>(j + 1);
        s += std::sin(x[j]) * std::pow(std::sin(i * x[j] * x[j] / std::numbers::pi), 20);
      }
      return -s;
    case TargetFunctionId::tf3:
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        s += x[j] * std::sin(std::sqrt(std::abs(x[j])));
      }
      return 418.9829 * static_cast<double>(tf.n) - s;
  }
  return 0.0;
}

std::optional<std::size_t> default_sample_size(std::size_t n) {
  switch (n) {
    case 1:
    case 2: return 5000;
    case 5: return 20000;
    case 10: return 50000;
    default: return std::nullopt;
  }
}

Dataset sample_raw(const TargetFunction& tf, std::size_t count, const RngStream& rng) {
  if (tf.n < 1) throw InvalidConfigError("target function needs n >= 1");
  if (count < 1) throw InvalidConfigError("sample size must be positive");
  const Range dom = tf.domain();
  RngStream s = rng;
  Dataset ds;
  ds.x.resize(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(tf.n));
  ds.y.resize(static_cast<Eigen::Index>(count));
  Vector point(static_cast<Eigen::Index>(tf.n));
  for (Eigen::Index l = 0; l < ds.x.rows(); ++l) {
    for (Eigen::Index j = 0; j < point.size(); ++j) point[j] = s.uniform(dom.lo, dom.hi);
    ds.x.row(l) = point.transpose();
    ds.y[l] = evaluate_tf(tf, point);
  }
  return ds;
}

SampledProblem sample_problem(const TargetFunction& tf, const RngStream& rng,
                              std::optional<std::size_t> size) {
  const auto count = size ? size : default_sample_size(tf.n);
  if (!count) {
    throw InvalidConfigError("no default sample size for n = " +
                             std::to_string(tf.n) + "; supply one");
  }
  SampledProblem p;
  p.tf = tf;
  p.raw_train = sample_raw(tf, *count, rng.child(0));
  p.raw_test = sample_raw(tf, *count, rng.child(1));
  p.normalization =
      fit_normalization(p.raw_train.x, p.raw_train.y, {0.0, 1.0}, {-1.0, 1.0});
  p.train = p.raw_train;
  p.train.x = p.normalization.apply_inputs(p.raw_train.x);
  p.train.y = p.normalization.apply_output(p.raw_train.y);
  p.test = p.raw_test;
  p.test.x = p.normalization.apply_inputs(p.raw_test.x);
  p.test.y = p.normalization.apply_output(p.raw_test.y);
  return p;
}

}  // namespace rfnn
