#include "rfnn/kmeans.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rfnn/error.hpp"

namespace rfnn {
namespace {

double squared_distance(const Matrix& a, Eigen::Index ra, const Matrix& b,
                        Eigen::Index rb) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double d = a(ra, j) - b(rb, j);
    s += d * d;
  }
  return s;
}

Matrix seed_plus_plus(const Matrix& x, std::size_t k, RngStream& rng) {
  const Eigen::Index n_points = x.rows();
  Matrix centroids(static_cast<Eigen::Index>(k), x.cols());
  std::vector<double> d2(static_cast<std::size_t>(n_points),
                         std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(static_cast<std::size_t>(n_points), false);

  auto take = [&](std::size_t c, Eigen::Index row) {
    centroids.row(static_cast<Eigen::Index>(c)) = x.row(row);
    chosen[static_cast<std::size_t>(row)] = true;
    for (Eigen::Index l = 0; l < n_points; ++l) {
      const double d = squared_distance(x, l, centroids, static_cast<Eigen::Index>(c));
      auto& cur = d2[static_cast<std::size_t>(l)];
      if (d < cur) cur = d;
    }
  };

  take(0, static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n_points))));
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double d : d2) total += d;
    Eigen::Index pick = -1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (Eigen::Index l = 0; l < n_points; ++l) {
        acc += d2[static_cast<std::size_t>(l)];
        if (acc > target && d2[static_cast<std::size_t>(l)] > 0.0) {
          pick = l;
          break;
        }
      }
      // Rounding can leave target == total; fall back to the last positive.
      for (Eigen::Index l = n_points - 1; pick < 0 && l >= 0; --l) {
        if (d2[static_cast<std::size_t>(l)] > 0.0) pick = l;
      }
    } else {
      // Only duplicates remain: pick uniformly among unchosen rows.
      std::vector<Eigen::Index> free_rows;
      for (Eigen::Index l = 0; l < n_points; ++l) {
        if (!chosen[static_cast<std::size_t>(l)]) free_rows.push_back(l);
      }
      pick = free_rows[rng.index(free_rows.size())];
    }
    take(c, pick);
  }
  return centroids;
}

}  // namespace

KMeansResult kmeans(const Matrix& x, std::size_t k, RngStream& rng,
                    const KMeansSettings& settings) {
  if (k == 0) throw InvalidConfigError("kmeans: k must be positive");
  if (static_cast<std::size_t>(x.rows()) < k) {
    throw InvalidConfigError("kmeans: " + std::to_string(x.rows()) +
                             " points cannot form " + std::to_string(k) +
                             " clusters");
  }

  KMeansResult result;
  result.centroids = seed_plus_plus(x, k, rng);
  result.labels.assign(static_cast<std::size_t>(x.rows()), 0);
  const auto kk = static_cast<Eigen::Index>(k);

  for (std::size_t iter = 0; iter < settings.max_iterations; ++iter) {
    for (Eigen::Index l = 0; l < x.rows(); ++l) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t label = 0;
      for (Eigen::Index c = 0; c < kk; ++c) {
        const double d = squared_distance(x, l, result.centroids, c);
        if (d < best) {
          best = d;
          label = static_cast<std::size_t>(c);
        }
      }
      result.labels[static_cast<std::size_t>(l)] = label;
    }

    Matrix sums = Matrix::Zero(kk, x.cols());
    std::vector<std::size_t> counts(k, 0);
    for (Eigen::Index l = 0; l < x.rows(); ++l) {
      const auto c = result.labels[static_cast<std::size_t>(l)];
      sums.row(static_cast<Eigen::Index>(c)) += x.row(l);
      ++counts[c];
    }
    Matrix updated = result.centroids;
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        updated.row(static_cast<Eigen::Index>(c)) =
            sums.row(static_cast<Eigen::Index>(c)) / static_cast<double>(counts[c]);
      }
    }
    const double shift = (updated - result.centroids).norm();
    const double scale = result.centroids.norm();
    result.centroids = std::move(updated);
    result.iterations = iter + 1;
    if (shift <= settings.relative_shift * scale) break;
  }
  return result;
}

}  // namespace rfnn
