#pragma once

#include <Eigen/Dense>

#include "tsecon/error.hpp"

namespace tsecon {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = Vec<double>;
using Matrix = Mat<double>;

/// Relative tolerance on |R_ii| / max|R_jj| below which a column counts as dependent.
inline constexpr double kRankTolerance = 1e-10;

template <typename Scalar>
struct LeastSquares {
  Vec<Scalar> coefficients;
  Vec<Scalar> residuals;
  Mat<Scalar> xtx_inverse;  ///< (X'X)^-1 assembled from the triangular factor
  Scalar ssr{};
};

/// Least squares via column-pivoted Householder QR. Throws EstimationError when
/// X has fewer rows than columns or is rank deficient at kRankTolerance.
template <typename DerivedX, typename DerivedY>
LeastSquares<typename DerivedX::Scalar> solve_least_squares(
    const Eigen::MatrixBase<DerivedX>& X, const Eigen::MatrixBase<DerivedY>& y,
    typename DerivedX::Scalar rank_tolerance = kRankTolerance) {
  using Scalar = typename DerivedX::Scalar;
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  if (y.rows() != n) throw EstimationError("design and response lengths differ");
  if (n < k) throw EstimationError("fewer observations than parameters");

  LeastSquares<Scalar> out;
  if (k == 0) {
    out.coefficients.resize(0);
    out.residuals = y;
    out.xtx_inverse.resize(0, 0);
    out.ssr = out.residuals.squaredNorm();
    return out;
  }

  Eigen::ColPivHouseholderQR<Mat<Scalar>> qr(X.derived());
  qr.setThreshold(rank_tolerance);
  if (qr.rank() < k) throw EstimationError("design matrix is rank deficient");

  out.coefficients = qr.solve(y.derived());
  out.residuals = y - X * out.coefficients;
  out.ssr = out.residuals.squaredNorm();

  // (X'X)^-1 = P R^-1 R^-T P'
  const auto R = qr.matrixR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
  Mat<Scalar> r_inv = R.solve(Mat<Scalar>::Identity(k, k));
  Mat<Scalar> inner = r_inv * r_inv.transpose();
  const auto& perm = qr.colsPermutation();
  out.xtx_inverse = perm * inner * perm.transpose();
  return out;
}

/// Fitted values of every column of `targets` projected on the column space of `basis`.
template <typename DerivedB, typename DerivedT>
Mat<typename DerivedB::Scalar> project(const Eigen::MatrixBase<DerivedB>& basis,
                                       const Eigen::MatrixBase<DerivedT>& targets) {
  using Scalar = typename DerivedB::Scalar;
  if (basis.rows() < basis.cols()) throw EstimationError("fewer observations than instruments");
  Eigen::ColPivHouseholderQR<Mat<Scalar>> qr(basis.derived());
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < basis.cols()) throw EstimationError("instrument matrix is rank deficient");
  Mat<Scalar> coef = qr.solve(targets.derived());
  return basis * coef;
}

}  // namespace tsecon
