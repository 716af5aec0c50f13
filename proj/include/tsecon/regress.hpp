#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsecon/dataset.hpp"
#include "tsecon/linalg.hpp"
#include "tsecon/term.hpp"

namespace tsecon {

struct SampleWindow {
  int first = 0;
  int last = 0;
  int size() const { return last - first + 1; }
  friend bool operator==(const SampleWindow&, const SampleWindow&) = default;
};

/// Indicator regressor equal to 1 in the listed years (D96/D02 style).
struct Dummy {
  std::string name;
  std::vector<int> years;
};

struct ModelSpec {
  Term dependent;
  std::vector<Term> regressors;
  bool include_constant = true;
  std::optional<SampleWindow> sample;
  std::vector<Dummy> dummies;
};

struct Coefficient {
  std::string label;
  double estimate = 0.0;
  double std_error = 0.0;
  double t_stat = 0.0;
  double p_value = 0.0;
};

/// Coefficients plus the full diagnostic block printed under each regression table.
struct FitResult {
  std::string method;  ///< "OLS", "TSLS", "AR (Cochrane-Orcutt)"
  std::string dependent;
  std::vector<Coefficient> coefficients;
  int n_obs = 0;
  int n_params = 0;
  bool has_constant = false;
  bool normal_inference = false;  ///< z instead of t for p-values
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double f_stat = 0.0;
  double f_p_value = 0.0;
  int f_df1 = 0;
  int f_df2 = 0;
  double ssr = 0.0;
  double resid_std_error = 0.0;
  double dep_mean = 0.0;
  double dep_std_error = 0.0;
  double log_likelihood = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  double hqc = 0.0;
  double durbin_watson = 0.0;
  double rho1 = 0.0;
  AnnualSeries residuals;
  SampleWindow sample;

  const Coefficient& coefficient(std::string_view label) const;
  bool has_coefficient(std::string_view label) const;
  Vector estimates() const;
};

/// Evaluated regression data: one row per realized sample year.
struct Design {
  std::string dependent;
  std::vector<int> years;
  Vector y;
  Matrix X;
  std::vector<std::string> labels;
  bool has_constant = false;
  SampleWindow window() const { return {years.front(), years.back()}; }
};

inline constexpr const char* kConstLabel = "const";

/// Common window of all terms (or the requested sample) and the evaluated columns.
/// Column order: const, regressors, dummies.
Design build_design(const Dataset& dataset, const ModelSpec& spec);

/// Columns for extra terms evaluated on an existing design's years.
Matrix evaluate_terms(const Dataset& dataset, const std::vector<Term>& terms,
                      const std::vector<int>& years);

/// Assemble a FitResult from coefficients and their unscaled covariance (X'X)^-1.
/// `residuals` are the structural residuals y - X b; the error variance is SSR / (n - k).
FitResult summarize_fit(std::string method, const Design& design, const Vector& beta,
                        const Matrix& xtx_inverse, const Vector& residuals, bool normal_inference);

FitResult ols_fit(const Dataset& dataset, const ModelSpec& spec);
FitResult ols_fit(const Design& design);

struct VifEntry {
  std::string label;
  double value = 1.0;
  bool infinite = false;
};

/// VIF_j = 1 / (1 - R2_j) from regressing column j on the other regressors and a constant.
std::vector<VifEntry> vif(const Dataset& dataset, const ModelSpec& spec);

}  // namespace tsecon
