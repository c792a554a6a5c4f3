#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "rfnn/dataio.hpp"
#include "rfnn/normalization.hpp"
#include "rfnn/rng.hpp"

namespace rfnn {

enum class TargetFunctionId { tf1, tf2, tf3 };

/// Synthetic regression targets on their native domains:
///   TF1: sum_j sin(20 exp(x_j)) x_j^2,                x in [0, 1]^n
///   TF2: -sum_i sin(x_i) sin^20(i x_i^2 / pi),        x in [0, pi]^n
///   TF3: 418.9829 n - sum_i x_i sin(sqrt(|x_i|)),     x in [-500, 500]^n
struct TargetFunction {
  TargetFunctionId id = TargetFunctionId::tf1;
  std::size_t n = 1;

  Range domain() const;
  std::string name() const;
};

TargetFunctionId parse_target_function(const std::string& name);

/// Throws InvalidInputError when x has the wrong length or leaves the domain.
double evaluate_tf(const TargetFunction& tf, const Eigen::Ref<const Vector>& x);

/// Train/test size used for n arguments: 5000 for n <= 2, 20000 for n = 5,
/// 50000 for n = 10. Other n need an explicit size.
std::optional<std::size_t> default_sample_size(std::size_t n);

/// Sampled problem. `train` and `test` are normalized (inputs to [0, 1],
/// outputs to [-1, 1]) with maps fitted on the raw training set.
struct SampledProblem {
  TargetFunction tf;
  Dataset train;
  Dataset test;
  Dataset raw_train;
  Dataset raw_test;
  NormalizationSpec normalization;
};

/// Draws i.i.d. uniform inputs over the native domain. Training rows come
/// from rng.child(0), test rows from rng.child(1).
SampledProblem sample_problem(const TargetFunction& tf, const RngStream& rng,
                              std::optional<std::size_t> size = std::nullopt);

/// Raw samples of `count` uniform points.
Dataset sample_raw(const TargetFunction& tf, std::size_t count, const RngStream& rng);

}  // namespace rfnn
