#include "tsecon/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "tsecon/error.hpp"
#include "tsecon/stats.hpp"

namespace tsecon {

namespace {

void validate_lags(const std::vector<int>& lags) {
  for (std::size_t i = 0; i < lags.size(); ++i) {
    if (lags[i] < 1) throw SpecError("AR lags must be positive");
    if (i > 0 && lags[i] <= lags[i - 1]) throw SpecError("AR lags must be strictly increasing");
  }
}

// Rows t >= m of v - sum_j rho_j v(t - lag_j), column by column.
Matrix quasi_difference(const Matrix& v, const std::vector<int>& lags, const Vector& rho, int m) {
  const Eigen::Index rows = v.rows() - m;
  Matrix out = v.bottomRows(rows);
  for (std::size_t j = 0; j < lags.size(); ++j) {
    out -= rho(static_cast<Eigen::Index>(j)) * v.middleRows(m - lags[j], rows);
  }
  return out;
}

struct RhoFit {
  Vector rho;
  std::vector<Coefficient> coefficients;
};

RhoFit estimate_rho(const Vector& u, const std::vector<int>& lags, int m) {
  const Eigen::Index rows = u.size() - m;
  const auto L = static_cast<Eigen::Index>(lags.size());
  Matrix U(rows, L);
  for (Eigen::Index j = 0; j < L; ++j) U.col(j) = u.segment(m - lags[j], rows);
  const Vector target = u.tail(rows);
  const auto ls = solve_least_squares(U, target);
  const double s2 = ls.ssr / static_cast<double>(rows - L);

  RhoFit out{ls.coefficients, {}};
  for (Eigen::Index j = 0; j < L; ++j) {
    Coefficient c;
    c.label = "u(-" + std::to_string(lags[j]) + ")";
    c.estimate = ls.coefficients(j);
    c.std_error = std::sqrt(std::max(0.0, s2 * ls.xtx_inverse(j, j)));
    c.t_stat = c.estimate / c.std_error;
    c.p_value = stats::student_t_two_sided(c.t_stat, static_cast<double>(rows - L));
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

void require_stationary(const Vector& rho, const std::vector<int>& lags) {
  const int m = lags.back();
  Matrix companion = Matrix::Zero(m, m);
  for (std::size_t j = 0; j < lags.size(); ++j) {
    companion(0, lags[j] - 1) = rho(static_cast<Eigen::Index>(j));
  }
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  const double radius = companion.eigenvalues().cwiseAbs().maxCoeff();
  if (radius >= 1.0) {
    throw EstimationError("AR disturbance process left the stationary region (root modulus " +
                          std::to_string(radius) + ")");
  }
}

}  // namespace

ArFitResult cochrane_orcutt_fit(const Design& design, const ArSpec& spec) {
  validate_lags(spec.ar_lags);
  if (spec.max_iterations < 1) throw SpecError("max_iterations must be >= 1");
  if (spec.ar_lags.empty()) {
    ArFitResult out;
    out.structural = ols_fit(design);
    out.converged = true;
    return out;
  }

  const int m = spec.ar_lags.back();
  const auto n = static_cast<int>(design.y.size());
  const auto k = static_cast<int>(design.X.cols());
  const int L = static_cast<int>(spec.ar_lags.size());
  if (n - m <= k || n - m <= L) {
    throw EstimationError("too few observations after dropping " + std::to_string(m) +
                          " for the AR lags");
  }

  Design transformed;
  transformed.dependent = design.dependent;
  transformed.years.assign(design.years.begin() + m, design.years.end());
  transformed.labels = design.labels;
  transformed.has_constant = design.has_constant;

  ArFitResult out;
  Vector u = solve_least_squares(design.X, design.y).residuals;
  RhoFit rho = estimate_rho(u, spec.ar_lags, m);
  LeastSquares<double> ls;
  double previous_ssr = 0.0;
  for (int it = 1; it <= spec.max_iterations; ++it) {
    require_stationary(rho.rho, spec.ar_lags);
    transformed.y = quasi_difference(design.y, spec.ar_lags, rho.rho, m);
    transformed.X = quasi_difference(design.X, spec.ar_lags, rho.rho, m);
    ls = solve_least_squares(transformed.X, transformed.y);
    out.ssr_path.push_back(ls.ssr);
    out.iterations_used = it;
    if (it > 1 && std::abs(ls.ssr - previous_ssr) <= spec.convergence_rel_tol * previous_ssr) {
      out.converged = true;
      break;
    }
    previous_ssr = ls.ssr;
    if (it == spec.max_iterations) break;
    u = design.y - design.X * ls.coefficients;
    rho = estimate_rho(u, spec.ar_lags, m);
  }

  out.structural = summarize_fit("AR (Cochrane-Orcutt)", transformed, ls.coefficients,
                                 ls.xtx_inverse, ls.residuals, false);
  out.rho = rho.coefficients;

  // Goodness of fit and the dependent-variable summary refer to the original
  // dependent over the transformed sample.
  const Vector y = design.y.tail(n - m);
  auto& f = out.structural;
  f.dep_mean = y.mean();
  const double centered = (y.array() - f.dep_mean).square().sum();
  f.dep_std_error = std::sqrt(centered / (y.size() - 1));
  const double tss = design.has_constant ? centered : y.squaredNorm();
  f.r_squared = 1.0 - f.ssr / tss;
  f.adj_r_squared = 1.0 - (1.0 - f.r_squared) * (f.n_obs - 1) / static_cast<double>(f.f_df2);
  if (f.f_df1 > 0) {
    f.f_stat = (f.r_squared / f.f_df1) / ((1.0 - f.r_squared) / f.f_df2);
    f.f_p_value = stats::f_upper(f.f_stat, f.f_df1, f.f_df2);
  }
  return out;
}

ArFitResult cochrane_orcutt_fit(const Dataset& dataset, const ArSpec& spec) {
  return cochrane_orcutt_fit(build_design(dataset, spec.model), spec);
}

ModelComparison compare_models(const FitResult& first, const FitResult& second) {
  if (first.dependent != second.dependent) {
    throw SpecError("models explain different variables: '" + first.dependent + "' vs '" +
                    second.dependent + "'");
  }
  if (!(first.sample == second.sample) || first.n_obs != second.n_obs) {
    throw SpecError("models use different samples");
  }
  ModelComparison out{first.dependent, first.sample, {}};
  auto row = [&](std::string name, double a, double b) {
    out.rows.push_back({std::move(name), a, b, b - a, b < a});
  };
  row("Sum of squared residuals", first.ssr, second.ssr);
  row("S.E. of regression", first.resid_std_error, second.resid_std_error);
  row("Akaike criterion", first.aic, second.aic);
  row("Schwarz criterion", first.bic, second.bic);
  row("Hannan-Quinn", first.hqc, second.hqc);
  return out;
}

ModelComparison compare_models(const ArFitResult& first, const ArFitResult& second) {
  return compare_models(first.structural, second.structural);
}

GrangerPair granger_f(const std::vector<double>& cause, const std::vector<double>& effect,
                      int lags, std::string cause_label, std::string effect_label) {
  if (lags < 1) throw SpecError("Granger test needs at least one lag");
  if (cause.size() != effect.size()) throw SpecError("Granger series must be aligned");
  const int total = static_cast<int>(effect.size());
  const int n = total - lags;
  const int k_u = 2 * lags + 1;
  if (n - k_u <= 0) {
    throw EstimationError("too few observations for a Granger test with " +
                          std::to_string(lags) + " lags");
  }
  Matrix X(n, k_u);
  Vector y(n);
  for (int r = 0; r < n; ++r) {
    const int t = r + lags;
    y(r) = effect[static_cast<std::size_t>(t)];
    X(r, 0) = 1.0;
    for (int l = 1; l <= lags; ++l) {
      X(r, l) = effect[static_cast<std::size_t>(t - l)];
      X(r, lags + l) = cause[static_cast<std::size_t>(t - l)];
    }
  }
  const double ssr_u = solve_least_squares(X, y).ssr;
  const double ssr_r = solve_least_squares(X.leftCols(lags + 1), y).ssr;

  GrangerPair p;
  p.cause = std::move(cause_label);
  p.effect = std::move(effect_label);
  p.lags = lags;
  p.n_obs = n;
  p.f_stat = ((ssr_r - ssr_u) / lags) / (ssr_u / (n - k_u));
  p.p_value = stats::f_upper(p.f_stat, lags, n - k_u);
  p.reject = p.p_value < 0.05;
  return p;
}

GrangerResult granger_causality(const Dataset& dataset, const Term& x, const Term& y, int lags,
                                std::optional<SampleWindow> base_window) {
  int first = 0;
  int last = 0;
  if (base_window) {
    first = base_window->first + std::max(x.shift(), y.shift());
    last = base_window->last;
  } else {
    const auto ax = apply_term(dataset, x);
    const auto ay = apply_term(dataset, y);
    first = std::max(ax.start_year, ay.start_year);
    last = std::min(ax.end_year(), ay.end_year());
  }
  if (last < first) throw DataError("Granger series do not overlap");
  const auto sx = apply_term(dataset, x, first, last);
  const auto sy = apply_term(dataset, y, first, last);
  GrangerResult out;
  out.pairs.push_back(granger_f(sx.values, sy.values, lags, x.display(), y.display()));
  out.pairs.push_back(granger_f(sy.values, sx.values, lags, y.display(), x.display()));
  return out;
}

ChowResult chow_test(const Design& design, int break_year) {
  const auto n = static_cast<int>(design.y.size());
  const auto p = static_cast<int>(design.X.cols());
  const auto split = static_cast<int>(
      std::lower_bound(design.years.begin(), design.years.end(), break_year) -
      design.years.begin());
  const int n1 = split;
  const int n2 = n - split;
  if (n1 <= p || n2 <= p) {
    throw EstimationError("Chow break at " + std::to_string(break_year) +
                          " leaves a sub-sample with no more observations than parameters (" +
                          std::to_string(n1) + " and " + std::to_string(n2) + " vs " +
                          std::to_string(p) + ")");
  }
  ChowResult out;
  out.break_year = break_year;
  out.ssr_pooled = solve_least_squares(design.X, design.y).ssr;
  out.ssr_first = solve_least_squares(design.X.topRows(n1), design.y.head(n1)).ssr;
  out.ssr_second = solve_least_squares(design.X.bottomRows(n2), design.y.tail(n2)).ssr;
  const double split_ssr = out.ssr_first + out.ssr_second;
  out.df1 = p;
  out.df2 = n - 2 * p;
  out.f_stat = ((out.ssr_pooled - split_ssr) / p) / (split_ssr / out.df2);
  out.p_value = stats::f_upper(out.f_stat, out.df1, out.df2);
  out.reject = out.p_value < 0.05;
  return out;
}

ChowResult chow_test(const Dataset& dataset, const ModelSpec& spec, int break_year) {
  return chow_test(build_design(dataset, spec), break_year);
}

}  // namespace tsecon
