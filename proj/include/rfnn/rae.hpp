#pragma once

#include <cstddef>
#include <variant>

#include "rfnn/linalg.hpp"
#include "rfnn/model.hpp"
#include "rfnn/paramgen.hpp"
#include "rfnn/rng.hpp"

namespace rfnn {

/// Random encoder of a randomization-based autoencoder: weights w (n x m,
/// one column per hidden node) and biases c.
struct RaeHidden {
  Matrix weights;
  Vector biases;
};

/// Least-squares decoder V (m x n).
struct RaeDecoder {
  Matrix v;
};

// Ways of turning autoencoder decoder weights into network hidden nodes.
// The FNN weights are always A = V^T; variants differ in encoder sampling and
// in how the FNN biases b are set.

/// w ~ U(-u_ae, u_ae), c = -w^T x*, b = -a^T x*.
struct Raem1 {
  double u_ae = 0.1;
  AnchorPolicy anchor = RandomTrainingPoint{};
};
/// w ~ U(-1, 1), c = -w^T x*, b = -a^T x*.
struct Raem2 {
  AnchorPolicy anchor = RandomTrainingPoint{};
};
/// w, c ~ U(-1, 1), b = -a^T x*.
struct Raem3 {
  AnchorPolicy anchor = RandomTrainingPoint{};
};
/// w, c, b ~ U(-1, 1).
struct Raem4 {};
/// w, c ~ U(-1, 1), b_i = mean_j a_{j,i}.
struct Raem5 {};

using RaemVariant = std::variant<Raem1, Raem2, Raem3, Raem4, Raem5>;

/// Variant index as 1..5.
int raem_number(const RaemVariant& variant);

/// G (N x m), G(l, i) = sigmoid(w_i^T x_l + c_i).
Matrix rae_encode(const RaeHidden& hidden, const Matrix& x);

/// V = lstsq(G, X).
RaeDecoder rae_decode_weights(const Matrix& g, const Matrix& x,
                              const SolverConfig& cfg = {});

/// Encoder parameters for `variant`. Anchored variants draw their encoder
/// anchors independently of the network anchors.
RaeHidden raem_encoder(const RaemVariant& variant, const Matrix& x_train,
                       const Hypercube& cube, std::size_t m,
                       const RngStream& rng);

/// Builds and trains the autoencoder on `x_train`, then returns the network
/// hidden layer A = V^T with biases set per variant. The result depends on
/// the inputs only; targets never enter.
HiddenLayer raem_hidden_layer(const RaemVariant& variant, const Matrix& x_train,
                              const Hypercube& cube, std::size_t m,
                              const RngStream& rng, const SolverConfig& cfg = {});

/// Signed distance -b / ||a|| from the origin to the hyperplane a^T x + b = 0.
/// Throws DegenerateNodeError when a is the zero vector.
double inflection_hyperplane_offset(const Vector& a, double b);

}  // namespace rfnn
