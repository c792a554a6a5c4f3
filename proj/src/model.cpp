#include "rfnn/model.hpp"

#include <cmath>
#include <string>

#include "rfnn/error.hpp"

namespace rfnn {
namespace {

void require_input_dim(const HiddenLayer& layer, const Matrix& x) {
  if (static_cast<std::size_t>(x.cols()) != layer.input_dim()) {
    throw InvalidInputError("expected " + std::to_string(layer.input_dim()) +
                            " input columns, got " + std::to_string(x.cols()));
  }
}

}  // namespace

void HiddenLayer::validate() const {
  if (weights.rows() < 1 || weights.cols() < 1) {
    throw InvalidInputError("hidden layer needs n >= 1 and m >= 1");
  }
  if (biases.size() != weights.cols()) {
    throw InvalidInputError("hidden layer bias count does not match node count");
  }
  if (!weights.allFinite() || !biases.allFinite()) {
    throw InvalidInputError("hidden layer has non-finite parameters");
  }
}

void TrainedNetwork::validate() const {
  hidden.validate();
  if (static_cast<std::size_t>(readout.beta.size()) != hidden.node_count()) {
    throw InvalidInputError("readout length does not match node count");
  }
  if (!readout.beta.allFinite()) {
    throw InvalidInputError("readout has non-finite weights");
  }
  if (normalization.input_dim() != hidden.input_dim()) {
    throw InvalidInputError("normalization dimension does not match network");
  }
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double node_dot(const Matrix& weights, Eigen::Index node,
                const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < weights.rows(); ++j) s += weights(j, node) * x[j];
  return s;
}

Matrix hidden_outputs(const HiddenLayer& layer, const Matrix& x) {
  require_input_dim(layer, x);
  const Eigen::Index m = layer.weights.cols();
  Matrix h(x.rows(), m);
  Eigen::RowVectorXd row(x.cols());
  for (Eigen::Index l = 0; l < x.rows(); ++l) {
    row = x.row(l);
    for (Eigen::Index i = 0; i < m; ++i) {
      h(l, i) = sigmoid(node_dot(layer.weights, i, row) + layer.biases[i]);
    }
  }
  return h;
}

ReadoutWeights train_readout(const HiddenLayer& layer, const Matrix& x,
                             const Vector& y, const SolverConfig& cfg) {
  if (x.rows() != y.size()) {
    throw InvalidInputError("train_readout: " + std::to_string(x.rows()) +
                            " input rows but " + std::to_string(y.size()) +
                            " targets");
  }
  const Matrix h = hidden_outputs(layer, x);
  return {lstsq(h, y, cfg).col(0)};
}

Vector predict(const HiddenLayer& layer, const ReadoutWeights& readout,
               const Matrix& x) {
  require_input_dim(layer, x);
  if (static_cast<std::size_t>(readout.beta.size()) != layer.node_count()) {
    throw InvalidInputError("readout length does not match node count");
  }
  const Matrix h = hidden_outputs(layer, x);
  Vector out(x.rows());
  for (Eigen::Index l = 0; l < h.rows(); ++l) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < h.cols(); ++i) s += readout.beta[i] * h(l, i);
    out[l] = s;
  }
  return out;
}

Vector predict(const TrainedNetwork& net, const Matrix& x) {
  return predict(net.hidden, net.readout, x);
}

double rmse(const Vector& predicted, const Vector& actual) {
  if (predicted.size() != actual.size() || predicted.size() == 0) {
    throw InvalidInputError("rmse: vectors must have equal nonzero length");
  }
  double s = 0.0;
  for (Eigen::Index l = 0; l < predicted.size(); ++l) {
    const double d = predicted[l] - actual[l];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(predicted.size()));
}

}  // namespace rfnn
