#pragma once

#include <cstddef>
#include <vector>

#include "rfnn/linalg.hpp"
#include "rfnn/rng.hpp"

namespace rfnn {

struct KMeansSettings {
  std::size_t max_iterations = 100;
  /// Stop once ||C_new - C_old||_F <= tolerance * ||C_old||_F.
  double relative_shift = 1e-6;
};

struct KMeansResult {
  Matrix centroids;  // k x n
  std::vector<std::size_t> labels;
  std::size_t iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding. Rows of `x` are points.
/// A cluster that loses all its points keeps its previous centroid.
KMeansResult kmeans(const Matrix& x, std::size_t k, RngStream& rng,
                    const KMeansSettings& settings = {});

}  // namespace rfnn
