#include "tsecon/var.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Eigenvalues>

#include "tsecon/error.hpp"

namespace tsecon {

VarModel<double> var_fit(const Matrix& data, std::vector<std::string> labels, int p,
                         int first_year) {
  if (p < 1) throw SpecError("VAR lag order must be >= 1");
  const auto T = static_cast<int>(data.rows());
  const auto k = static_cast<int>(data.cols());
  if (k < 1 || static_cast<int>(labels.size()) != k) throw SpecError("VAR labels do not match data");
  const int n_eff = T - p;
  const int per_eq = k * p + 1;
  if (n_eff <= per_eq) {
    throw EstimationError("VAR(" + std::to_string(p) + ") with " + std::to_string(k) +
                          " variables needs more than " + std::to_string(per_eq) +
                          " effective observations, have " + std::to_string(n_eff));
  }

  Matrix X(n_eff, per_eq);
  X.col(0).setOnes();
  for (int i = 1; i <= p; ++i) X.middleCols(1 + (i - 1) * k, k) = data.middleRows(p - i, n_eff);
  const Matrix Y = data.bottomRows(n_eff);

  VarModel<double> m;
  m.labels = std::move(labels);
  m.p = p;
  m.n_eff = n_eff;
  m.sample = {first_year + p, first_year + T - 1};
  m.intercepts.resize(k);
  m.coefficient_matrices.assign(static_cast<std::size_t>(p), Matrix(k, k));
  m.residuals.resize(n_eff, k);
  for (int eq = 0; eq < k; ++eq) {
    const auto ls = solve_least_squares(X, Y.col(eq));
    m.intercepts(eq) = ls.coefficients(0);
    for (int i = 0; i < p; ++i) {
      m.coefficient_matrices[static_cast<std::size_t>(i)].row(eq) =
          ls.coefficients.segment(1 + i * k, k).transpose();
    }
    m.residuals.col(eq) = ls.residuals;
  }
  m.residual_cov = (m.residuals.transpose() * m.residuals) / static_cast<double>(n_eff - per_eq);
  m.residual_cov = 0.5 * (m.residual_cov + m.residual_cov.transpose()).eval();
  return m;
}

VarModel<double> var_fit(const Dataset& dataset, const std::vector<Term>& variables, int p,
                         std::optional<SampleWindow> sample) {
  if (variables.empty()) throw SpecError("VAR needs at least one variable");
  int first = std::numeric_limits<int>::min();
  int last = std::numeric_limits<int>::max();
  for (const auto& v : variables) {
    const auto s = apply_term(dataset, v);
    first = std::max(first, s.start_year);
    last = std::min(last, s.end_year());
  }
  if (sample) {
    first = std::max(first, sample->first);
    last = std::min(last, sample->last);
  }
  if (last < first) throw DataError("VAR variables have no common years");

  const int T = last - first + 1;
  Matrix data(T, static_cast<Eigen::Index>(variables.size()));
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < variables.size(); ++j) {
    const auto s = apply_term(dataset, variables[j], first, last);
    data.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Vector>(s.values.data(), T);
    labels.push_back(variables[j].display());
  }
  auto m = var_fit(data, std::move(labels), p, first);
  m.variables = variables;
  return m;
}

double companion_spectral_radius(const VarModel<double>& model) {
  const int k = model.k();
  const int kp = k * model.p;
  Matrix C = Matrix::Zero(kp, kp);
  for (int i = 0; i < model.p; ++i) {
    C.block(0, i * k, k, k) = model.coefficient_matrices[static_cast<std::size_t>(i)];
  }
  if (model.p > 1) C.bottomLeftCorner(kp - k, kp - k).setIdentity();
  return C.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<Term> reversed(std::vector<Term> variables) {
  std::reverse(variables.begin(), variables.end());
  return variables;
}

}  // namespace tsecon
