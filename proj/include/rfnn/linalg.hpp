#pragma once

#include <optional>

#include <Eigen/Dense>

namespace rfnn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Controls the pseudoinverse cutoff and the optional ridge penalty.
///
/// `rank_tolerance` empty selects the automatic cutoff
/// max(rows, cols) * sigma_max * machine epsilon. `ridge_lambda` empty means
/// ordinary (minimum-norm) least squares.
struct SolverConfig {
  std::optional<double> rank_tolerance;
  std::optional<double> ridge_lambda;

  void validate() const;
};

/// Thin singular value decomposition M = U * diag(sigma) * Vt with sigma
/// sorted nonincreasing.
struct SvdFactorization {
  Matrix u;
  Vector singular_values;
  Matrix vt;
};

/// Thin SVD of `m`. Tall inputs (rows >= 2 cols) are first reduced by a
/// Householder QR so only the small triangular factor is decomposed.
SvdFactorization svd(const Matrix& m);

/// Cutoff below which singular values count as zero.
double rank_tolerance(const Vector& singular_values, Eigen::Index rows,
                      Eigen::Index cols, const SolverConfig& cfg);

/// Moore-Penrose pseudoinverse.
Matrix pseudoinverse(const Matrix& m, const SolverConfig& cfg = {});

/// Least-squares solve of m * X = t. Without a ridge penalty this is the
/// minimum-norm solution pinv(m) * t; with lambda it is
/// (m^T m + lambda I)^-1 m^T t, evaluated through the SVD of m.
Matrix lstsq(const Matrix& m, const Matrix& t, const SolverConfig& cfg = {});

}  // namespace rfnn
