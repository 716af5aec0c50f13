#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsecon/regress.hpp"

namespace tsecon {

/// Reduced-form VAR(p) with intercept. Variable order is the Cholesky order.
template <typename Scalar>
struct VarModel {
  std::vector<Term> variables;
  std::vector<std::string> labels;
  int p = 0;
  Vec<Scalar> intercepts;
  std::vector<Mat<Scalar>> coefficient_matrices;  ///< A_1..A_p, row = equation
  Mat<Scalar> residual_cov;
  Mat<Scalar> residuals;  ///< n_eff x k
  SampleWindow sample;    ///< years of the effective observations
  int n_eff = 0;

  int k() const { return static_cast<int>(labels.size()); }
};

/// responses[h](j, s): response of variable j at step h to a one-s.d. shock in s.
template <typename Scalar>
struct IrfResult {
  int horizon = 0;
  std::vector<std::string> ordering;
  std::vector<Mat<Scalar>> responses;
  bool pivoted_factor = false;  ///< residual_cov was not positive definite
};

/// shares[h](j, s): fraction of the h-step forecast-error variance of j due to shock s.
template <typename Scalar>
struct FevdResult {
  int horizon = 0;
  std::vector<std::string> ordering;
  std::vector<Mat<Scalar>> shares;
};

/// Equation-by-equation OLS on the levels of the evaluated terms. `sample` bounds the
/// years of the data (the first p of them are used as presample lags).
/// Residual covariance divides by n_eff - (k p + 1).
VarModel<double> var_fit(const Dataset& dataset, const std::vector<Term>& variables, int p,
                         std::optional<SampleWindow> sample = std::nullopt);

/// Same estimator on a T x k data matrix (rows are consecutive periods).
VarModel<double> var_fit(const Matrix& data, std::vector<std::string> labels, int p,
                         int first_year = 1);

/// Moving-average matrices Psi_0 = I, Psi_h = sum_{i<=min(h,p)} A_i Psi_{h-i}.
template <typename Scalar>
std::vector<Mat<Scalar>> ma_matrices(const VarModel<Scalar>& model, int horizon) {
  const int k = model.k();
  std::vector<Mat<Scalar>> psi;
  psi.reserve(static_cast<std::size_t>(horizon) + 1);
  psi.push_back(Mat<Scalar>::Identity(k, k));
  for (int h = 1; h <= horizon; ++h) {
    Mat<Scalar> acc = Mat<Scalar>::Zero(k, k);
    for (int i = 1; i <= std::min(h, model.p); ++i) {
      acc += model.coefficient_matrices[static_cast<std::size_t>(i - 1)] *
             psi[static_cast<std::size_t>(h - i)];
    }
    psi.push_back(std::move(acc));
  }
  return psi;
}

/// Orthogonalized responses Theta_h = Psi_h P with P the lower Cholesky factor of the
/// residual covariance. A semidefinite covariance falls back to a pivoted LDL' factor
/// and sets `pivoted_factor`.
template <typename Scalar>
IrfResult<Scalar> impulse_response(const VarModel<Scalar>& model, int horizon) {
  if (horizon < 0) throw SpecError("horizon must be >= 0");
  IrfResult<Scalar> out;
  out.horizon = horizon;
  out.ordering = model.labels;
  Mat<Scalar> P;
  Eigen::LLT<Mat<Scalar>> llt(model.residual_cov);
  if (llt.info() == Eigen::Success) {
    P = llt.matrixL();
  } else {
    Eigen::LDLT<Mat<Scalar>> ldlt(model.residual_cov);
    if (ldlt.info() != Eigen::Success) throw EstimationError("residual covariance factorization failed");
    const Vec<Scalar> d = ldlt.vectorD().cwiseMax(Scalar(0)).cwiseSqrt();
    Mat<Scalar> L = ldlt.matrixL();
    P = ldlt.transpositionsP().transpose() * (L * d.asDiagonal());
    out.pivoted_factor = true;
  }
  for (auto& psi : ma_matrices(model, horizon)) out.responses.push_back(psi * P);
  return out;
}

template <typename Scalar>
FevdResult<Scalar> variance_decomposition(const VarModel<Scalar>& model, int horizon) {
  const auto irf = impulse_response(model, horizon);
  const int k = model.k();
  FevdResult<Scalar> out;
  out.horizon = horizon;
  out.ordering = irf.ordering;
  Mat<Scalar> cumulative = Mat<Scalar>::Zero(k, k);
  for (const auto& theta : irf.responses) {
    cumulative += theta.cwiseAbs2();
    const Vec<Scalar> totals = cumulative.rowwise().sum();
    if ((totals.array() <= Scalar(0)).any()) {
      throw EstimationError("forecast-error variance is zero; decomposition undefined");
    }
    out.shares.push_back(totals.cwiseInverse().asDiagonal() * cumulative);
  }
  return out;
}

/// Largest modulus among the companion-matrix eigenvalues.
double companion_spectral_radius(const VarModel<double>& model);

/// The same model specification with the variable order reversed (ordering sensitivity).
std::vector<Term> reversed(std::vector<Term> variables);

}  // namespace tsecon
