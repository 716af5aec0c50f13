#include "tsecon/unitroot.hpp"

#include <algorithm>
#include <cmath>

#include "tsecon/error.hpp"
#include "tsecon/linalg.hpp"

namespace tsecon {

std::string to_string(Deterministic d) {
  switch (d) {
    case Deterministic::none: return "none";
    case Deterministic::constant: return "constant";
    case Deterministic::constant_and_trend: return "trend";
  }
  return "constant";
}

Deterministic parse_deterministic(std::string_view text) {
  if (text == "none" || text == "nc") return Deterministic::none;
  if (text == "constant" || text == "c") return Deterministic::constant;
  if (text == "trend" || text == "ct" || text == "constant_and_trend") {
    return Deterministic::constant_and_trend;
  }
  throw SpecError("deterministic must be none, constant or trend; got '" + std::string(text) + "'");
}

namespace {

AdfResult run_df_regression(const AnnualSeries& series, const AdfSpec& spec, int n_vars) {
  const auto& y = series.values;
  const int n = static_cast<int>(y.size());
  const int p = spec.lag_order;
  if (p < 0) throw SpecError("lag order must be >= 0");
  const int n_det = spec.deterministic == Deterministic::none ? 0
                    : spec.deterministic == Deterministic::constant ? 1
                                                                    : 2;
  const int k = 1 + p + n_det;
  const int n_used = n - 1 - p;
  if (n - p - 2 <= n_det || n_used <= k) {
    throw EstimationError("series '" + series.name + "' too short for the requested test (n=" +
                          std::to_string(n) + ", lags=" + std::to_string(p) + ")");
  }
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  if (*lo == *hi) throw EstimationError("series '" + series.name + "' is constant");

  Matrix X(n_used, k);
  Vector dy(n_used);
  for (int r = 0; r < n_used; ++r) {
    const int t = r + p + 1;  // index into y of the current observation
    dy(r) = y[t] - y[t - 1];
    X(r, 0) = y[t - 1];
    for (int l = 1; l <= p; ++l) X(r, l) = y[t - l] - y[t - l - 1];
    if (n_det >= 1) X(r, p + 1) = 1.0;
    if (n_det == 2) X(r, p + 2) = r + 1.0;
  }
  const auto ls = solve_least_squares(X, dy);
  const double s2 = ls.ssr / (n_used - k);

  AdfResult out;
  out.alpha_minus_one = ls.coefficients(0);
  out.t_stat = out.alpha_minus_one / std::sqrt(s2 * ls.xtx_inverse(0, 0));
  out.p_value = mackinnon_p(out.t_stat, spec.deterministic, n_vars);
  out.spec = spec;
  out.n_used = n_used;
  out.n_vars = n_vars;
  out.reject_5pct = out.p_value < 0.05;
  out.series = series.name;
  out.first_year = series.start_year + p + 1;
  return out;
}

}  // namespace

AdfResult adf_test(const AnnualSeries& series, const AdfSpec& spec) {
  return run_df_regression(series, spec, 1);
}

AdfResult df_residual_test(const AnnualSeries& residuals, int lag_order, int n_vars) {
  return run_df_regression(residuals, AdfSpec{Deterministic::none, lag_order}, n_vars);
}

}  // namespace tsecon
