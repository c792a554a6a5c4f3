#pragma once

#include <vector>

#include "rfnn/linalg.hpp"

namespace rfnn {

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

/// Min-max map from a fitted source interval onto a target range. A
/// degenerate source (min == max) sends every value to the target midpoint
/// and inverts back to the source constant.
struct AffineMap {
  double source_min = 0.0;
  double source_max = 1.0;
  Range target;

  bool degenerate() const { return !(source_max > source_min); }
  double apply(double x) const;
  double invert(double y) const;
};

/// Per-column input maps and the output map.
struct NormalizationSpec {
  std::vector<AffineMap> inputs;
  AffineMap output;

  std::size_t input_dim() const { return inputs.size(); }

  Matrix apply_inputs(const Matrix& x) const;
  Vector apply_output(const Vector& y) const;
  Matrix invert_inputs(const Matrix& x) const;
  Vector invert_output(const Vector& y) const;
};

/// Identity-like spec for data already in model space.
NormalizationSpec identity_normalization(std::size_t input_dim);

/// Fits min-max maps on the columns of `x` and on `y`.
NormalizationSpec fit_normalization(const Matrix& x, const Vector& y,
                                    Range input_target, Range output_target);

}  // namespace rfnn
