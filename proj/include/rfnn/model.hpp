#pragma once

#include <cstddef>

#include "rfnn/linalg.hpp"
#include "rfnn/normalization.hpp"

namespace rfnn {

/// Random hidden parameters of a single-hidden-layer sigmoid network.
/// Column i of `weights` (n x m) and `biases[i]` define node i.
struct HiddenLayer {
  Matrix weights;
  Vector biases;

  std::size_t input_dim() const { return static_cast<std::size_t>(weights.rows()); }
  std::size_t node_count() const { return static_cast<std::size_t>(weights.cols()); }

  /// Throws InvalidInputError unless n >= 1, m >= 1, shapes agree and all
  /// entries are finite.
  void validate() const;
};

struct ReadoutWeights {
  Vector beta;
};

/// Hidden layer plus least-squares readout. Inputs and outputs of `predict`
/// live in the normalized space described by `normalization`.
struct TrainedNetwork {
  HiddenLayer hidden;
  ReadoutWeights readout;
  NormalizationSpec normalization;

  void validate() const;
};

/// Logistic function, evaluated in the two-branch form that never
/// overflows exp().
double sigmoid(double z);

/// a_i^T x + b_i for node i at input row x. The dot product is accumulated
/// in input order starting from zero and the bias is added last; bias
/// construction uses the same routine so anchored nodes hit zero exactly.
double node_dot(const Matrix& weights, Eigen::Index node,
                const Eigen::Ref<const Eigen::RowVectorXd>& x);

/// N x m matrix with entry (l, i) = sigmoid(a_i^T x_l + b_i). Each row is
/// computed independently, so any row-block partition gives identical bits.
Matrix hidden_outputs(const HiddenLayer& layer, const Matrix& x);

/// beta = lstsq(H, Y).
ReadoutWeights train_readout(const HiddenLayer& layer, const Matrix& x,
                             const Vector& y, const SolverConfig& cfg = {});

Vector predict(const TrainedNetwork& net, const Matrix& x);

/// Convenience overload without normalization metadata.
Vector predict(const HiddenLayer& layer, const ReadoutWeights& readout,
               const Matrix& x);

double rmse(const Vector& predicted, const Vector& actual);

}  // namespace rfnn
