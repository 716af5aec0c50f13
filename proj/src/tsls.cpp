#include "tsecon/tsls.hpp"

#include <algorithm>

#include "tsecon/error.hpp"
#include "tsecon/stats.hpp"

namespace tsecon {

TslsResult tsls_fit(const Design& design, const std::vector<std::string>& endogenous,
                    const Matrix& instruments_excluded) {
  for (const auto& e : endogenous) {
    if (std::find(design.labels.begin(), design.labels.end(), e) == design.labels.end()) {
      throw SpecError("endogenous '" + e + "' is not a regressor");
    }
  }
  if (static_cast<std::size_t>(instruments_excluded.cols()) < endogenous.size()) {
    throw SpecError("order condition violated: " + std::to_string(instruments_excluded.cols()) +
                    " instruments for " + std::to_string(endogenous.size()) + " endogenous regressors");
  }

  if (endogenous.empty()) {
    TslsResult r{ols_fit(design), {}};
    return r;
  }

  const Eigen::Index n = design.X.rows();
  std::vector<Eigen::Index> endo_cols;
  std::vector<Eigen::Index> exo_cols;
  for (Eigen::Index j = 0; j < design.X.cols(); ++j) {
    const auto& lab = design.labels[static_cast<std::size_t>(j)];
    if (std::find(endogenous.begin(), endogenous.end(), lab) != endogenous.end()) {
      endo_cols.push_back(j);
    } else {
      exo_cols.push_back(j);
    }
  }

  // Full instrument matrix: included exogenous regressors, then the excluded instruments
  // that do not duplicate one of them.
  std::vector<Eigen::Index> extra;
  for (Eigen::Index z = 0; z < instruments_excluded.cols(); ++z) {
    const bool dup = std::any_of(exo_cols.begin(), exo_cols.end(), [&](Eigen::Index j) {
      return design.X.col(j) == instruments_excluded.col(z);
    });
    if (!dup) extra.push_back(z);
  }
  if (extra.size() < endogenous.size()) {
    throw SpecError("order condition violated after removing instruments that duplicate exogenous regressors");
  }
  Matrix Z(n, static_cast<Eigen::Index>(exo_cols.size() + extra.size()));
  for (std::size_t i = 0; i < exo_cols.size(); ++i) Z.col(static_cast<Eigen::Index>(i)) = design.X.col(exo_cols[i]);
  for (std::size_t i = 0; i < extra.size(); ++i) {
    Z.col(static_cast<Eigen::Index>(exo_cols.size() + i)) = instruments_excluded.col(extra[i]);
  }

  Matrix endo(n, static_cast<Eigen::Index>(endo_cols.size()));
  for (std::size_t i = 0; i < endo_cols.size(); ++i) endo.col(static_cast<Eigen::Index>(i)) = design.X.col(endo_cols[i]);
  const Matrix fitted = project(Z, endo);

  Matrix Xhat = design.X;
  for (std::size_t i = 0; i < endo_cols.size(); ++i) {
    const auto col = design.X.col(endo_cols[i]);
    bool is_instrument = false;
    for (Eigen::Index z = 0; z < Z.cols() && !is_instrument; ++z) is_instrument = (Z.col(z) == col);
    // A regressor that is itself an instrument projects onto itself.
    if (!is_instrument) Xhat.col(endo_cols[i]) = fitted.col(static_cast<Eigen::Index>(i));
  }

  const auto ls = solve_least_squares(Xhat, design.y);
  const Vector structural = design.y - design.X * ls.coefficients;

  TslsResult out;
  out.fit = summarize_fit("TSLS", design, ls.coefficients, ls.xtx_inverse, structural, true);

  // First-stage strength: F of the excluded instruments in each stage-1 regression.
  Matrix Zr(n, static_cast<Eigen::Index>(exo_cols.size()));
  for (std::size_t i = 0; i < exo_cols.size(); ++i) Zr.col(static_cast<Eigen::Index>(i)) = design.X.col(exo_cols[i]);
  for (std::size_t i = 0; i < endo_cols.size(); ++i) {
    const Vector x = endo.col(static_cast<Eigen::Index>(i));
    FirstStage fs;
    fs.regressor = design.labels[static_cast<std::size_t>(endo_cols[i])];
    const double ssr_u = (x - fitted.col(static_cast<Eigen::Index>(i))).squaredNorm();
    const double ssr_r = Zr.cols() > 0 ? (x - project(Zr, x)).squaredNorm() : x.squaredNorm();
    const double tss = (x.array() - x.mean()).square().sum();
    fs.r_squared = tss > 0 ? 1.0 - ssr_u / tss : 1.0;
    const double q = static_cast<double>(extra.size());
    const double df2 = static_cast<double>(n - Z.cols());
    fs.excluded_f = df2 > 0 ? ((ssr_r - ssr_u) / q) / (ssr_u / df2) : 0.0;
    fs.excluded_f_p = df2 > 0 ? stats::f_upper(fs.excluded_f, q, df2) : 1.0;
    out.first_stage.push_back(std::move(fs));
  }
  return out;
}

TslsResult tsls_fit(const Dataset& dataset, const TslsSpec& spec) {
  if (spec.instruments.size() < spec.endogenous.size()) {
    throw SpecError("order condition violated: fewer instruments than endogenous regressors");
  }
  const Design design = build_design(dataset, spec.model);
  const Matrix Zx = evaluate_terms(dataset, spec.instruments, design.years);
  return tsls_fit(design, spec.endogenous, Zx);
}

}  // namespace tsecon
