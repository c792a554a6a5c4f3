#include "rfnn/paramgen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rfnn/error.hpp"

namespace rfnn {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kMaxAngleDeg = 89.99;

double to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

void require_cube(const Hypercube& cube, const Matrix& x_train) {
  if (cube.dim() == 0) throw InvalidInputError("hypercube has no dimensions");
  if (x_train.size() > 0 && static_cast<std::size_t>(x_train.cols()) != cube.dim()) {
    throw InvalidInputError("training data and hypercube dimensions differ");
  }
}

}  // namespace

bool Hypercube::contains(const Eigen::Ref<const Eigen::RowVectorXd>& point) const {
  if (static_cast<std::size_t>(point.size()) != dim()) return false;
  for (std::size_t j = 0; j < dim(); ++j) {
    const double v = point[static_cast<Eigen::Index>(j)];
    if (v < lower[j] || v > upper[j]) return false;
  }
  return true;
}

Hypercube input_hypercube(const Matrix& x) {
  if (x.rows() == 0 || x.cols() == 0) {
    throw InvalidInputError("input_hypercube: empty matrix");
  }
  Hypercube cube;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    cube.lower.push_back(x.col(j).minCoeff());
    cube.upper.push_back(x.col(j).maxCoeff());
  }
  return cube;
}

void RamConfig::validate() const {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw InvalidConfigError("RaM interval half-width u must be positive");
  }
}

void RalphamConfig::validate() const {
  if (!(alpha_min_deg >= 0.0 && alpha_min_deg < alpha_max_deg &&
        alpha_max_deg <= 90.0)) {
    throw InvalidConfigError(
        "RalphaM needs 0 <= alpha_min < alpha_max <= 90 degrees");
  }
}

double max_slope_weight() { return 4.0 * std::tan(to_radians(kMaxAngleDeg)); }

double slope_weight(double alpha_deg) {
  const double limit = max_slope_weight();
  const double a = 4.0 * std::tan(to_radians(alpha_deg));
  if (a > limit) return limit;
  if (a < -limit) return -limit;
  return a;
}

Matrix anchor_points(const AnchorPolicy& policy, const Matrix& x_train,
                     const Hypercube& cube, std::size_t m, const RngStream& rng) {
  require_cube(cube, x_train);
  const auto n = static_cast<Eigen::Index>(cube.dim());
  const auto rows = static_cast<Eigen::Index>(m);
  return std::visit(
      overloaded{
          [&](const UniformInHypercube&) {
            Matrix anchors(rows, n);
            for (Eigen::Index i = 0; i < rows; ++i) {
              RngStream node = rng.child(static_cast<std::uint64_t>(i));
              for (Eigen::Index j = 0; j < n; ++j) {
                const auto jj = static_cast<std::size_t>(j);
                double v = node.uniform(cube.lower[jj], cube.upper[jj]);
                if (v > cube.upper[jj]) v = cube.upper[jj];
                anchors(i, j) = v;
              }
            }
            return anchors;
          },
          [&](const RandomTrainingPoint&) {
            if (x_train.rows() == 0) {
              throw InvalidInputError("anchor_points: empty training set");
            }
            Matrix anchors(rows, n);
            for (Eigen::Index i = 0; i < rows; ++i) {
              RngStream node = rng.child(static_cast<std::uint64_t>(i));
              anchors.row(i) = x_train.row(static_cast<Eigen::Index>(
                  node.index(static_cast<std::size_t>(x_train.rows()))));
            }
            return anchors;
          },
          [&](const ClusterPrototype& proto) {
            if (x_train.rows() == 0) {
              throw InvalidInputError("anchor_points: empty training set");
            }
            if (static_cast<std::size_t>(x_train.rows()) < m) {
              throw InvalidConfigError(
                  "cluster anchors need at least m = " + std::to_string(m) +
                  " training points, got " + std::to_string(x_train.rows()));
            }
            RngStream km = rng;
            return kmeans(x_train, m, km, proto.kmeans).centroids;
          },
      },
      policy);
}

Vector anchored_biases(const Matrix& weights, const Matrix& anchors) {
  if (anchors.rows() != weights.cols() || anchors.cols() != weights.rows()) {
    throw InvalidInputError("anchored_biases: anchors do not match weights");
  }
  Vector b(weights.cols());
  for (Eigen::Index i = 0; i < weights.cols(); ++i) {
    b[i] = -node_dot(weights, i, anchors.row(i));
  }
  return b;
}

HiddenLayer generate_ram(const RamConfig& cfg, const Matrix& x_train,
                         const Hypercube& cube, std::size_t m,
                         const RngStream& rng) {
  cfg.validate();
  require_cube(cube, x_train);
  if (m == 0) throw InvalidConfigError("node count must be positive");
  const auto n = static_cast<Eigen::Index>(cube.dim());
  HiddenLayer layer;
  layer.weights.resize(n, static_cast<Eigen::Index>(m));
  const RngStream weight_rng = rng.child(kWeightStream);
  for (Eigen::Index i = 0; i < layer.weights.cols(); ++i) {
    RngStream node = weight_rng.child(static_cast<std::uint64_t>(i));
    for (Eigen::Index j = 0; j < n; ++j) layer.weights(j, i) = node.uniform(-cfg.u, cfg.u);
  }
  const Matrix anchors =
      anchor_points(cfg.anchor, x_train, cube, m, rng.child(kAnchorStream));
  layer.biases = anchored_biases(layer.weights, anchors);
  return layer;
}

HiddenLayer generate_ralpham(const RalphamConfig& cfg, const Matrix& x_train,
                             const Hypercube& cube, std::size_t m,
                             const RngStream& rng) {
  cfg.validate();
  require_cube(cube, x_train);
  if (m == 0) throw InvalidConfigError("node count must be positive");
  const auto n = static_cast<Eigen::Index>(cube.dim());
  HiddenLayer layer;
  layer.weights.resize(n, static_cast<Eigen::Index>(m));
  const RngStream weight_rng = rng.child(kWeightStream);
  for (Eigen::Index i = 0; i < layer.weights.cols(); ++i) {
    RngStream node = weight_rng.child(static_cast<std::uint64_t>(i));
    for (Eigen::Index j = 0; j < n; ++j) {
      double angle = node.uniform(cfg.alpha_min_deg, cfg.alpha_max_deg);
      if (angle >= cfg.alpha_max_deg) {
        angle = std::nextafter(cfg.alpha_max_deg, cfg.alpha_min_deg);
      }
      layer.weights(j, i) = node.sign() * slope_weight(angle);
    }
  }
  const Matrix anchors =
      anchor_points(cfg.anchor, x_train, cube, m, rng.child(kAnchorStream));
  layer.biases = anchored_biases(layer.weights, anchors);
  return layer;
}

}  // namespace rfnn
