#pragma once

#include <string>
#include <vector>

#include "tsecon/regress.hpp"

namespace tsecon {

struct TslsSpec {
  ModelSpec model;
  std::vector<std::string> endogenous;  ///< regressor labels instrumented in stage 1
  std::vector<Term> instruments;        ///< excluded instruments
};

/// Stage-1 summary for one endogenous regressor (informational only).
struct FirstStage {
  std::string regressor;
  double r_squared = 0.0;
  double excluded_f = 0.0;  ///< joint F of the excluded instruments
  double excluded_f_p = 0.0;
};

struct TslsResult {
  FitResult fit;
  std::vector<FirstStage> first_stage;
};

/// Two-stage least squares. Standard errors use structural residuals y - X b with
/// (Xhat'Xhat)^-1; p-values are asymptotic normal.
TslsResult tsls_fit(const Dataset& dataset, const TslsSpec& spec);

/// Same estimator on pre-built data: `instruments_excluded` rows align with `design.years`.
TslsResult tsls_fit(const Design& design, const std::vector<std::string>& endogenous,
                    const Matrix& instruments_excluded);

}  // namespace tsecon
