#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsecon/regress.hpp"

namespace tsecon {

inline constexpr double kEconomicallyActive2010 = 1'665'000.0;
inline constexpr double kExports2010Usd = 6'762'000'000.0;

/// Capital-growth schedule. Each override applies from its year until the next one.
struct CapitalScenario {
  std::string name;
  std::map<int, double> overrides;  ///< year -> growth rate (0.15 = 15%)
  bool log_growth = true;           ///< use ln(1 + g) as dln(K); false uses g directly
};

/// How a fitted equation maps onto the simulation: y(t) = c + b dK(t) + sum_j phi_j y(t-j).
/// Lag coefficients are looked up as lagged(dependent, j).display().
struct DynamicEquation {
  Term dependent;
  Term capital;
};

struct ScenarioResult {
  std::string name;
  AnnualSeries baseline_path;
  AnnualSeries counterfactual_path;
  double terminal_delta = 0.0;  ///< counterfactual minus baseline in the last year
  std::map<std::string, double> derived;
};

/// Deviation of y from its actual path caused by replacing dK with the scenario schedule,
/// propagated through the lag polynomial. Zero before the first override year.
std::vector<double> propagate_deviation(const FitResult& fit, const DynamicEquation& eq,
                                        const std::vector<double>& capital_actual,
                                        const std::vector<double>& capital_scenario);

/// The dK path for [window.first, window.last]: actual values before the first override.
std::vector<double> scenario_capital_path(const CapitalScenario& scenario, SampleWindow window,
                                          const std::vector<double>& capital_actual);

/// Fully dynamic simulation of the unemployment rate (percent). Derived quantities:
/// "terminal_unemployment", "jobs_created" = (U_actual - U_sim)/100 * eap.
ScenarioResult simulate_unemployment(const Dataset& dataset, const FitResult& fit,
                                     const DynamicEquation& eq, const CapitalScenario& scenario,
                                     SampleWindow window, double eap = kEconomicallyActive2010);

/// Dynamic simulation of ln exports. Derived quantities: "export_change_pct",
/// "export_change_usd" against `terminal_actual_usd`.
ScenarioResult simulate_exports(const Dataset& dataset, const FitResult& fit,
                                const DynamicEquation& eq, const CapitalScenario& scenario,
                                SampleWindow window, double terminal_actual_usd = kExports2010Usd);

}  // namespace tsecon
