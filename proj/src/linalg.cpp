#include "rfnn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rfnn/error.hpp"

namespace rfnn {
namespace {

void require_finite(const Matrix& m, const char* what) {
  if (m.size() == 0) {
    throw InvalidInputError(std::string(what) + ": empty matrix");
  }
  if (!m.allFinite()) {
    throw InvalidInputError(std::string(what) + ": non-finite entry");
  }
}

// Eigen does not report sweep counts, so the error carries 0 iterations.
template <typename Svd>
void require_converged(const Svd& dec) {
  if (dec.info() != Eigen::Success || !dec.singularValues().allFinite()) {
    throw NumericFailureError("SVD did not converge", 0);
  }
}

SvdFactorization decompose_square_or_wide(const Matrix& m) {
  Eigen::BDCSVD<Matrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success || !dec.singularValues().allFinite()) {
    Eigen::JacobiSVD<Matrix> fallback(m,
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
    require_converged(fallback);
    return {fallback.matrixU(), fallback.singularValues(),
            fallback.matrixV().transpose()};
  }
  return {dec.matrixU(), dec.singularValues(), dec.matrixV().transpose()};
}

bool is_tall(const Matrix& m) { return m.rows() >= 2 * m.cols(); }

Matrix upper_factor(const Eigen::HouseholderQR<Matrix>& qr, Eigen::Index k) {
  return qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
}

// Diagonal of the pseudoinverse (or ridge) filter applied to singular values.
Vector inverse_spectrum(const Vector& sigma, Eigen::Index rows,
                        Eigen::Index cols, const SolverConfig& cfg) {
  Vector inv = Vector::Zero(sigma.size());
  if (cfg.ridge_lambda) {
    const double lambda = *cfg.ridge_lambda;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      const double denom = sigma[i] * sigma[i] + lambda;
      inv[i] = denom > 0.0 ? sigma[i] / denom : 0.0;
    }
    return inv;
  }
  const double tol = rank_tolerance(sigma, rows, cols, cfg);
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > tol) inv[i] = 1.0 / sigma[i];
  }
  return inv;
}

}  // namespace

void SolverConfig::validate() const {
  if (rank_tolerance && !(*rank_tolerance > 0.0)) {
    throw InvalidConfigError("explicit rank tolerance must be positive");
  }
  if (ridge_lambda && !(*ridge_lambda >= 0.0)) {
    throw InvalidConfigError("ridge lambda must be nonnegative");
  }
}

SvdFactorization svd(const Matrix& m) {
  require_finite(m, "svd");
  if (is_tall(m)) {
    Eigen::HouseholderQR<Matrix> qr(m);
    const Eigen::Index k = m.cols();
    SvdFactorization small = decompose_square_or_wide(upper_factor(qr, k));
    Matrix u = Matrix::Identity(m.rows(), k);
    u.topRows(k) = small.u;
    u.applyOnTheLeft(qr.householderQ());
    return {std::move(u), std::move(small.singular_values),
            std::move(small.vt)};
  }
  if (is_tall(m.transpose())) {
    SvdFactorization t = svd(m.transpose());
    return {t.vt.transpose(), std::move(t.singular_values), t.u.transpose()};
  }
  return decompose_square_or_wide(m);
}

double rank_tolerance(const Vector& singular_values, Eigen::Index rows,
                      Eigen::Index cols, const SolverConfig& cfg) {
  if (cfg.rank_tolerance) return *cfg.rank_tolerance;
  const double sigma_max =
      singular_values.size() > 0 ? singular_values.maxCoeff() : 0.0;
  return static_cast<double>(std::max(rows, cols)) * sigma_max *
         std::numeric_limits<double>::epsilon();
}

Matrix pseudoinverse(const Matrix& m, const SolverConfig& cfg) {
  cfg.validate();
  const SvdFactorization f = svd(m);
  const Vector inv = inverse_spectrum(f.singular_values, m.rows(), m.cols(), cfg);
  return f.vt.transpose() * inv.asDiagonal() * f.u.transpose();
}

Matrix lstsq(const Matrix& m, const Matrix& t, const SolverConfig& cfg) {
  cfg.validate();
  if (m.rows() != t.rows()) {
    throw InvalidInputError("lstsq: row count mismatch (" +
                            std::to_string(m.rows()) + " vs " +
                            std::to_string(t.rows()) + ")");
  }
  require_finite(m, "lstsq");
  require_finite(t, "lstsq");

  if (is_tall(m)) {
    // M = Q R, R = U S Vt  =>  pinv(M) T = V S^+ U^T (Q^T T)[0:k]
    Eigen::HouseholderQR<Matrix> qr(m);
    const Eigen::Index k = m.cols();
    const SvdFactorization small = decompose_square_or_wide(upper_factor(qr, k));
    Matrix qt = t;
    qt.applyOnTheLeft(qr.householderQ().adjoint());
    const Vector inv =
        inverse_spectrum(small.singular_values, m.rows(), m.cols(), cfg);
    return small.vt.transpose() *
           (inv.asDiagonal() * (small.u.transpose() * qt.topRows(k)));
  }

  const SvdFactorization f = svd(m);
  const Vector inv = inverse_spectrum(f.singular_values, m.rows(), m.cols(), cfg);
  return f.vt.transpose() * (inv.asDiagonal() * (f.u.transpose() * t));
}

}  // namespace rfnn
