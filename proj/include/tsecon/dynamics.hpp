#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsecon/regress.hpp"

namespace tsecon {

/// Regression with AR disturbances u(t) = sum_k rho_k u(t-k) + e(t) over an arbitrary lag list.
struct ArSpec {
  ModelSpec model;
  std::vector<int> ar_lags;  ///< strictly increasing, positive
  int max_iterations = 20;
  double convergence_rel_tol = 5e-5;  // 0.005 percent change in SSR
};

struct ArFitResult {
  FitResult structural;            ///< diagnostics of the final quasi-differenced regression
  std::vector<Coefficient> rho;    ///< labelled u(-k)
  int iterations_used = 0;
  bool converged = false;
  std::vector<double> ssr_path;    ///< transformed-model SSR per iteration
};

/// Iterated Cochrane-Orcutt. An empty lag list returns ols_fit unchanged.
/// Throws EstimationError if the estimated AR polynomial leaves the stationary region.
ArFitResult cochrane_orcutt_fit(const Dataset& dataset, const ArSpec& spec);
ArFitResult cochrane_orcutt_fit(const Design& design, const ArSpec& spec);

struct SelectionRow {
  std::string statistic;
  double first = 0.0;
  double second = 0.0;
  double delta = 0.0;     ///< second - first
  bool improved = false;  ///< second is strictly better (all rows: lower is better)
};

struct ModelComparison {
  std::string dependent;
  SampleWindow sample;
  std::vector<SelectionRow> rows;
};

/// Side-by-side selection statistics; throws SpecError unless both fits share
/// the dependent variable and the sample.
ModelComparison compare_models(const ArFitResult& first, const ArFitResult& second);
ModelComparison compare_models(const FitResult& first, const FitResult& second);

struct GrangerPair {
  std::string cause;
  std::string effect;
  int lags = 0;
  int n_obs = 0;
  double f_stat = 0.0;
  double p_value = 1.0;
  bool reject = false;  ///< cause Granger-causes effect at 5%
};

struct GrangerResult {
  std::vector<GrangerPair> pairs;  ///< [x -> y, y -> x]
};

/// F test that the lags of one series add nothing to an autoregression (with constant)
/// of the other. `base_window` restricts the underlying series before the terms are
/// computed, so a differenced term starts one year after the window opens.
GrangerResult granger_causality(const Dataset& dataset, const Term& x, const Term& y, int lags,
                                std::optional<SampleWindow> base_window = std::nullopt);

/// Both directions for aligned vectors; cause and effect labels come from the caller.
GrangerPair granger_f(const std::vector<double>& cause, const std::vector<double>& effect,
                      int lags, std::string cause_label, std::string effect_label);

struct ChowResult {
  int break_year = 0;
  double f_stat = 0.0;
  int df1 = 0;
  int df2 = 0;
  double p_value = 1.0;
  bool reject = false;
  double ssr_pooled = 0.0;
  double ssr_first = 0.0;
  double ssr_second = 0.0;
};

/// Split-sample Chow test; the second regime starts at `break_year`.
ChowResult chow_test(const Dataset& dataset, const ModelSpec& spec, int break_year);
ChowResult chow_test(const Design& design, int break_year);

}  // namespace tsecon
