#include "rfnn/normalization.hpp"

#include <string>

#include "rfnn/error.hpp"

namespace rfnn {
namespace {

AffineMap fit_map(double lo, double hi, Range target) {
  AffineMap map;
  map.source_min = lo;
  map.source_max = hi;
  map.target = target;
  return map;
}

void require_columns(const Matrix& x, const NormalizationSpec& spec) {
  if (static_cast<std::size_t>(x.cols()) != spec.inputs.size()) {
    throw InvalidInputError("normalization: expected " +
                            std::to_string(spec.inputs.size()) +
                            " columns, got " + std::to_string(x.cols()));
  }
}

}  // namespace

double AffineMap::apply(double x) const {
  if (degenerate()) return 0.5 * (target.lo + target.hi);
  return target.lo +
         (x - source_min) / (source_max - source_min) * (target.hi - target.lo);
}

double AffineMap::invert(double y) const {
  if (degenerate()) return source_min;
  return source_min +
         (y - target.lo) / (target.hi - target.lo) * (source_max - source_min);
}

Matrix NormalizationSpec::apply_inputs(const Matrix& x) const {
  require_columns(x, *this);
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index l = 0; l < x.rows(); ++l) {
      out(l, j) = inputs[static_cast<std::size_t>(j)].apply(x(l, j));
    }
  }
  return out;
}

Vector NormalizationSpec::apply_output(const Vector& y) const {
  Vector out(y.size());
  for (Eigen::Index l = 0; l < y.size(); ++l) out[l] = output.apply(y[l]);
  return out;
}

Matrix NormalizationSpec::invert_inputs(const Matrix& x) const {
  require_columns(x, *this);
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index l = 0; l < x.rows(); ++l) {
      out(l, j) = inputs[static_cast<std::size_t>(j)].invert(x(l, j));
    }
  }
  return out;
}

Vector NormalizationSpec::invert_output(const Vector& y) const {
  Vector out(y.size());
  for (Eigen::Index l = 0; l < y.size(); ++l) out[l] = output.invert(y[l]);
  return out;
}

NormalizationSpec identity_normalization(std::size_t input_dim) {
  NormalizationSpec spec;
  spec.inputs.assign(input_dim, fit_map(0.0, 1.0, {0.0, 1.0}));
  spec.output = fit_map(0.0, 1.0, {0.0, 1.0});
  return spec;
}

NormalizationSpec fit_normalization(const Matrix& x, const Vector& y,
                                    Range input_target, Range output_target) {
  if (x.rows() == 0 || x.rows() != y.size()) {
    throw InvalidInputError("fit_normalization: empty or mismatched data");
  }
  NormalizationSpec spec;
  spec.inputs.reserve(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    spec.inputs.push_back(
        fit_map(x.col(j).minCoeff(), x.col(j).maxCoeff(), input_target));
  }
  spec.output = fit_map(y.minCoeff(), y.maxCoeff(), output_target);
  return spec;
}

}  // namespace rfnn
