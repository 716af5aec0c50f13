#include "tsecon/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "tsecon/error.hpp"
#include "tsecon/stats.hpp"

namespace tsecon {

const Coefficient& FitResult::coefficient(std::string_view label) const {
  for (const auto& c : coefficients) {
    if (c.label == label) return c;
  }
  throw SpecError("no coefficient labelled '" + std::string(label) + "'");
}

bool FitResult::has_coefficient(std::string_view label) const {
  return std::any_of(coefficients.begin(), coefficients.end(),
                     [&](const Coefficient& c) { return c.label == label; });
}

Vector FitResult::estimates() const {
  Vector b(static_cast<Eigen::Index>(coefficients.size()));
  for (std::size_t i = 0; i < coefficients.size(); ++i) b(static_cast<Eigen::Index>(i)) = coefficients[i].estimate;
  return b;
}

Matrix evaluate_terms(const Dataset& dataset, const std::vector<Term>& terms,
                      const std::vector<int>& years) {
  Matrix X(static_cast<Eigen::Index>(years.size()), static_cast<Eigen::Index>(terms.size()));
  if (years.empty()) return X;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const auto s = apply_term(dataset, terms[j], years.front(), years.back());
    for (std::size_t i = 0; i < years.size(); ++i) {
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s.at(years[i]);
    }
  }
  return X;
}

Design build_design(const Dataset& dataset, const ModelSpec& spec) {
  std::set<std::string> seen;
  if (spec.include_constant) seen.insert(kConstLabel);
  for (const auto& t : spec.regressors) {
    if (!seen.insert(t.display()).second) {
      throw SpecError("duplicate regressor label '" + t.display() + "'");
    }
  }
  for (const auto& d : spec.dummies) {
    if (!seen.insert(d.name).second) throw SpecError("duplicate regressor label '" + d.name + "'");
  }

  int first = 0;
  int last = 0;
  if (spec.sample) {
    first = spec.sample->first;
    last = spec.sample->last;
  } else {
    auto full = apply_term(dataset, spec.dependent);
    first = full.start_year;
    last = full.end_year();
    for (const auto& t : spec.regressors) {
      auto s = apply_term(dataset, t);
      first = std::max(first, s.start_year);
      last = std::min(last, s.end_year());
    }
  }
  if (first > last) throw DataError("model terms share no common years");

  Design d;
  d.dependent = spec.dependent.display();
  d.has_constant = spec.include_constant;
  for (int y = first; y <= last; ++y) d.years.push_back(y);
  const auto n = static_cast<Eigen::Index>(d.years.size());

  const auto dep = apply_term(dataset, spec.dependent, first, last);
  d.y = Eigen::Map<const Vector>(dep.values.data(), n);

  const Eigen::Index k = (spec.include_constant ? 1 : 0) +
                         static_cast<Eigen::Index>(spec.regressors.size() + spec.dummies.size());
  d.X.resize(n, k);
  Eigen::Index col = 0;
  if (spec.include_constant) {
    d.X.col(col++).setOnes();
    d.labels.emplace_back(kConstLabel);
  }
  if (!spec.regressors.empty()) {
    d.X.middleCols(col, static_cast<Eigen::Index>(spec.regressors.size())) =
        evaluate_terms(dataset, spec.regressors, d.years);
    col += static_cast<Eigen::Index>(spec.regressors.size());
    for (const auto& t : spec.regressors) d.labels.push_back(t.display());
  }
  for (const auto& dummy : spec.dummies) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const int y = d.years[static_cast<std::size_t>(i)];
      d.X(i, col) = std::find(dummy.years.begin(), dummy.years.end(), y) != dummy.years.end() ? 1.0 : 0.0;
    }
    ++col;
    d.labels.push_back(dummy.name);
  }
  return d;
}

FitResult summarize_fit(std::string method, const Design& design, const Vector& beta,
                        const Matrix& xtx_inverse, const Vector& residuals, bool normal_inference) {
  const auto n = static_cast<int>(design.y.size());
  const auto k = static_cast<int>(beta.size());
  if (n <= k) throw EstimationError("need more observations than parameters");

  FitResult f;
  f.method = std::move(method);
  f.dependent = design.dependent;
  f.n_obs = n;
  f.n_params = k;
  f.has_constant = design.has_constant;
  f.normal_inference = normal_inference;
  f.sample = design.window();

  f.ssr = residuals.squaredNorm();
  const double s2 = f.ssr / (n - k);
  f.resid_std_error = std::sqrt(s2);

  for (int j = 0; j < k; ++j) {
    Coefficient c;
    c.label = design.labels[static_cast<std::size_t>(j)];
    c.estimate = beta(j);
    c.std_error = std::sqrt(std::max(0.0, s2 * xtx_inverse(j, j)));
    c.t_stat = c.estimate / c.std_error;
    c.p_value = normal_inference ? stats::normal_two_sided(c.t_stat)
                                 : stats::student_t_two_sided(c.t_stat, n - k);
    f.coefficients.push_back(std::move(c));
  }

  f.dep_mean = design.y.mean();
  const double centered = (design.y.array() - f.dep_mean).square().sum();
  f.dep_std_error = n > 1 ? std::sqrt(centered / (n - 1)) : 0.0;

  const double tss = design.has_constant ? centered : design.y.squaredNorm();
  f.r_squared = 1.0 - f.ssr / tss;
  f.adj_r_squared = 1.0 - (1.0 - f.r_squared) * (n - 1) / static_cast<double>(n - k);

  f.f_df1 = design.has_constant ? k - 1 : k;
  f.f_df2 = n - k;
  if (f.f_df1 > 0) {
    f.f_stat = ((tss - f.ssr) / f.f_df1) / (f.ssr / f.f_df2);
    f.f_p_value = stats::f_upper(f.f_stat, f.f_df1, f.f_df2);
  } else {
    f.f_stat = std::numeric_limits<double>::quiet_NaN();
    f.f_p_value = std::numeric_limits<double>::quiet_NaN();
  }

  f.log_likelihood = -0.5 * n * (1.0 + std::log(2.0 * std::numbers::pi) + std::log(f.ssr / n));
  f.aic = -2.0 * f.log_likelihood + 2.0 * k;
  f.bic = -2.0 * f.log_likelihood + k * std::log(static_cast<double>(n));
  f.hqc = -2.0 * f.log_likelihood + 2.0 * k * std::log(std::log(static_cast<double>(n)));

  double num = 0.0;
  double lag_prod = 0.0;
  for (int i = 1; i < n; ++i) {
    const double de = residuals(i) - residuals(i - 1);
    num += de * de;
    lag_prod += residuals(i) * residuals(i - 1);
  }
  f.durbin_watson = num / f.ssr;
  f.rho1 = lag_prod / f.ssr;

  f.residuals = AnnualSeries{"residuals", design.years.front(),
                             std::vector<double>(residuals.data(), residuals.data() + n),
                             "residual"};
  return f;
}

FitResult ols_fit(const Design& design) {
  if (design.y.size() <= design.X.cols()) {
    throw EstimationError("need more observations than parameters (n=" +
                          std::to_string(design.y.size()) + ", p=" +
                          std::to_string(design.X.cols()) + ")");
  }
  const auto ls = solve_least_squares(design.X, design.y);
  return summarize_fit("OLS", design, ls.coefficients, ls.xtx_inverse, ls.residuals, false);
}

FitResult ols_fit(const Dataset& dataset, const ModelSpec& spec) {
  return ols_fit(build_design(dataset, spec));
}

std::vector<VifEntry> vif(const Dataset& dataset, const ModelSpec& spec) {
  const Design d = build_design(dataset, spec);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < d.X.cols(); ++j) {
    if (d.labels[static_cast<std::size_t>(j)] != kConstLabel) cols.push_back(j);
  }
  const Eigen::Index n = d.X.rows();
  std::vector<VifEntry> out;
  for (Eigen::Index target : cols) {
    Matrix aux(n, static_cast<Eigen::Index>(cols.size()));
    aux.col(0).setOnes();
    Eigen::Index c = 1;
    for (Eigen::Index j : cols) {
      if (j != target) aux.col(c++) = d.X.col(j);
    }
    const Vector y = d.X.col(target);
    VifEntry e;
    e.label = d.labels[static_cast<std::size_t>(target)];
    try {
      const auto ls = solve_least_squares(aux, y);
      const double tss = (y.array() - y.mean()).square().sum();
      const double r2 = tss > 0.0 ? 1.0 - ls.ssr / tss : 1.0;
      if (r2 >= 1.0 - 1e-12) {
        e.infinite = true;
        e.value = std::numeric_limits<double>::infinity();
      } else {
        e.value = 1.0 / (1.0 - r2);
      }
    } catch (const EstimationError&) {
      e.infinite = true;
      e.value = std::numeric_limits<double>::infinity();
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace tsecon
