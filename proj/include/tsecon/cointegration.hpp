#pragma once

#include <map>
#include <string>

#include "tsecon/regress.hpp"
#include "tsecon/unitroot.hpp"

namespace tsecon {

struct CointegrationResult {
  FitResult long_run;
  AdfResult residual_test;
  bool cointegrated = false;
};

/// Integration order per term label, as established by earlier ADF runs.
using IntegrationOrders = std::map<std::string, int, std::less<>>;

/// Engle-Granger two-step test. Every term in `spec` (dependent and regressors) must be
/// flagged I(1) in `orders`; the flags are trusted, not re-tested.
///
/// The residual DF regression uses the tau_nc surface with N = number of variables
/// in the static regression.
CointegrationResult engle_granger(const Dataset& dataset, const ModelSpec& spec, int residual_lag,
                                  const IntegrationOrders& orders);

/// Static regression without a constant, which is how the long-run vector is reported.
ModelSpec long_run_spec(Term dependent, std::vector<Term> regressors);

}  // namespace tsecon
