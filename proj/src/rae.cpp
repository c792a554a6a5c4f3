#include "rfnn/rae.hpp"

#include <cmath>
#include <string>

#include "rfnn/error.hpp"

namespace rfnn {
namespace {

Matrix uniform_matrix(Eigen::Index rows, Eigen::Index cols, double half_width,
                      const RngStream& rng) {
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < cols; ++i) {
    RngStream node = rng.child(static_cast<std::uint64_t>(i));
    for (Eigen::Index j = 0; j < rows; ++j) out(j, i) = node.uniform(-half_width, half_width);
  }
  return out;
}

Vector uniform_vector(Eigen::Index size, double half_width, const RngStream& rng) {
  RngStream s = rng;
  Vector out(size);
  for (Eigen::Index i = 0; i < size; ++i) out[i] = s.uniform(-half_width, half_width);
  return out;
}

}  // namespace

int raem_number(const RaemVariant& variant) {
  return static_cast<int>(variant.index()) + 1;
}

Matrix rae_encode(const RaeHidden& hidden, const Matrix& x) {
  return hidden_outputs(HiddenLayer{hidden.weights, hidden.biases}, x);
}

RaeDecoder rae_decode_weights(const Matrix& g, const Matrix& x,
                              const SolverConfig& cfg) {
  if (g.rows() != x.rows()) {
    throw InvalidInputError("rae_decode_weights: G has " +
                            std::to_string(g.rows()) + " rows, X has " +
                            std::to_string(x.rows()));
  }
  return {lstsq(g, x, cfg)};
}

RaeHidden raem_encoder(const RaemVariant& variant, const Matrix& x_train,
                       const Hypercube& cube, std::size_t m,
                       const RngStream& rng) {
  const auto n = static_cast<Eigen::Index>(cube.dim());
  const auto mm = static_cast<Eigen::Index>(m);
  const RngStream weight_rng = rng.child(kEncoderStream).child(kWeightStream);
  const RngStream bias_rng = rng.child(kEncoderStream).child(kBiasStream);
  const RngStream anchor_rng = rng.child(kEncoderAnchorStream);

  RaeHidden hidden;
  if (const auto* v1 = std::get_if<Raem1>(&variant)) {
    if (!(v1->u_ae > 0.0) || !std::isfinite(v1->u_ae)) {
      throw InvalidConfigError("RAEM1 interval half-width u_ae must be positive");
    }
    hidden.weights = uniform_matrix(n, mm, v1->u_ae, weight_rng);
    hidden.biases = anchored_biases(
        hidden.weights, anchor_points(v1->anchor, x_train, cube, m, anchor_rng));
  } else if (const auto* v2 = std::get_if<Raem2>(&variant)) {
    hidden.weights = uniform_matrix(n, mm, 1.0, weight_rng);
    hidden.biases = anchored_biases(
        hidden.weights, anchor_points(v2->anchor, x_train, cube, m, anchor_rng));
  } else {
    hidden.weights = uniform_matrix(n, mm, 1.0, weight_rng);
    hidden.biases = uniform_vector(mm, 1.0, bias_rng);
  }
  return hidden;
}

HiddenLayer raem_hidden_layer(const RaemVariant& variant, const Matrix& x_train,
                              const Hypercube& cube, std::size_t m,
                              const RngStream& rng, const SolverConfig& cfg) {
  if (x_train.rows() < 1) throw InvalidInputError("raem: empty training set");
  if (m == 0) throw InvalidConfigError("node count must be positive");
  if (static_cast<std::size_t>(x_train.cols()) != cube.dim()) {
    throw InvalidInputError("training data and hypercube dimensions differ");
  }

  const RaeHidden encoder = raem_encoder(variant, x_train, cube, m, rng);
  const RaeDecoder decoder =
      rae_decode_weights(rae_encode(encoder, x_train), x_train, cfg);

  HiddenLayer layer;
  layer.weights = decoder.v.transpose();
  const RngStream anchor_rng = rng.child(kAnchorStream);

  switch (raem_number(variant)) {
    case 1:
      layer.biases = anchored_biases(
          layer.weights, anchor_points(std::get<Raem1>(variant).anchor, x_train,
                                       cube, m, anchor_rng));
      break;
    case 2:
      layer.biases = anchored_biases(
          layer.weights, anchor_points(std::get<Raem2>(variant).anchor, x_train,
                                       cube, m, anchor_rng));
      break;
    case 3:
      layer.biases = anchored_biases(
          layer.weights, anchor_points(std::get<Raem3>(variant).anchor, x_train,
                                       cube, m, anchor_rng));
      break;
    case 4:
      layer.biases = uniform_vector(static_cast<Eigen::Index>(m), 1.0,
                                    rng.child(kBiasStream));
      break;
    default:
      layer.biases = layer.weights.colwise().mean().transpose();
      break;
  }
  layer.validate();
  return layer;
}

double inflection_hyperplane_offset(const Vector& a, double b) {
  const double norm = a.norm();
  if (!(norm > 0.0)) {
    throw DegenerateNodeError("zero weight vector has no inflection hyperplane");
  }
  return -b / norm;
}

}  // namespace rfnn
