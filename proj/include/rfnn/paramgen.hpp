#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "rfnn/kmeans.hpp"
#include "rfnn/linalg.hpp"
#include "rfnn/model.hpp"
#include "rfnn/rng.hpp"

namespace rfnn {

/// Axis-aligned bounding box of the training inputs.
struct Hypercube {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dim() const { return lower.size(); }
  bool contains(const Eigen::Ref<const Eigen::RowVectorXd>& point) const;
};

Hypercube input_hypercube(const Matrix& x);

// Where each node's inflection point x* is placed.
struct UniformInHypercube {};
struct RandomTrainingPoint {};
struct ClusterPrototype {
  KMeansSettings kmeans;
};
using AnchorPolicy =
    std::variant<RandomTrainingPoint, UniformInHypercube, ClusterPrototype>;

/// Weights a ~ U(-u, u).
struct RamConfig {
  double u = 1.0;
  AnchorPolicy anchor = RandomTrainingPoint{};

  void validate() const;
};

/// Slope angles |alpha| ~ U[alpha_min, alpha_max) in degrees, a = 4 tan(alpha).
struct RalphamConfig {
  double alpha_min_deg = 0.0;
  double alpha_max_deg = 90.0;
  AnchorPolicy anchor = RandomTrainingPoint{};

  void validate() const;
};

/// Largest weight magnitude R-alpha-M may produce: 4 tan(89.99 deg).
double max_slope_weight();

/// Weight for slope angle `alpha_deg`, clamped to +-max_slope_weight().
double slope_weight(double alpha_deg);

/// m anchor points as rows of an m x n matrix.
///
/// `x_train` must be nonempty for RandomTrainingPoint and ClusterPrototype;
/// ClusterPrototype additionally needs at least m rows.
Matrix anchor_points(const AnchorPolicy& policy, const Matrix& x_train,
                     const Hypercube& cube, std::size_t m, const RngStream& rng);

/// b_i = -a_i^T x*_i for every column of `weights` and row of `anchors`.
Vector anchored_biases(const Matrix& weights, const Matrix& anchors);

/// Weights from a uniform interval, biases anchored at x*.
HiddenLayer generate_ram(const RamConfig& cfg, const Matrix& x_train,
                         const Hypercube& cube, std::size_t m,
                         const RngStream& rng);

/// Weights from uniform slope angles with independent +-1 sign per weight,
/// biases anchored at x*.
HiddenLayer generate_ralpham(const RalphamConfig& cfg, const Matrix& x_train,
                             const Hypercube& cube, std::size_t m,
                             const RngStream& rng);

/// Child stream tags shared by the generators. Node i draws from
/// rng.child(kWeightStream).child(i); anchors come from rng.child(kAnchorStream).
inline constexpr std::uint64_t kWeightStream = 1;
inline constexpr std::uint64_t kAnchorStream = 2;
inline constexpr std::uint64_t kBiasStream = 3;
inline constexpr std::uint64_t kEncoderStream = 4;
inline constexpr std::uint64_t kEncoderAnchorStream = 5;

}  // namespace rfnn
