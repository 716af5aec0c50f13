#pragma once

#include <span>
#include <string>

#include "tsecon/dataset.hpp"

namespace tsecon {

enum class Deterministic { none, constant, constant_and_trend };

std::string to_string(Deterministic d);
Deterministic parse_deterministic(std::string_view text);

struct AdfSpec {
  Deterministic deterministic = Deterministic::constant;
  int lag_order = 1;
};

struct AdfResult {
  double t_stat = 0.0;           ///< tau: t-ratio on y(t-1)
  double alpha_minus_one = 0.0;  ///< estimated coefficient on y(t-1)
  double p_value = 1.0;          ///< MacKinnon asymptotic p-value
  AdfSpec spec;
  int n_used = 0;
  int n_vars = 1;  ///< response-surface N (1 for a plain unit-root test)
  bool reject_5pct = false;
  std::string series;
  int first_year = 0;  ///< first year of the test regression
};

/// MacKinnon (1994) asymptotic p-value for a Dickey-Fuller tau statistic with N
/// integrated variables (N = 1..6).
double mackinnon_p(double tau, Deterministic deterministic, int n_vars = 1);

/// Regresses dy(t) on y(t-1), dy(t-1..t-p) and the deterministic terms.
AdfResult adf_test(const AnnualSeries& series, const AdfSpec& spec);

/// Dickey-Fuller test on cointegrating-regression residuals: no constant, no trend,
/// p-value from the tau_nc surface with `n_vars` variables.
AdfResult df_residual_test(const AnnualSeries& residuals, int lag_order, int n_vars = 1);

}  // namespace tsecon
