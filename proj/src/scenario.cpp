#include "tsecon/scenario.hpp"

#include <cmath>

#include "tsecon/error.hpp"

namespace tsecon {

namespace {

struct LagPolynomial {
  double capital = 0.0;
  std::vector<double> phi;  // phi[j-1] multiplies y(t-j)
};

LagPolynomial read_coefficients(const FitResult& fit, const DynamicEquation& eq) {
  const std::string capital = eq.capital.display();
  if (!fit.has_coefficient(capital)) {
    throw SpecError("fit has no coefficient for the capital term '" + capital + "'");
  }
  LagPolynomial poly;
  poly.capital = fit.coefficient(capital).estimate;
  std::size_t matched = 1 + (fit.has_coefficient(kConstLabel) ? 1 : 0);
  for (int j = 1; matched < fit.coefficients.size(); ++j) {
    const std::string label = lagged(eq.dependent, j).display();
    if (j > 16) {
      throw SpecError("fit contains regressors the simulation cannot drive (expected const, '" +
                      capital + "' and lags of '" + eq.dependent.display() + "')");
    }
    if (fit.has_coefficient(label)) {
      poly.phi.resize(static_cast<std::size_t>(j), 0.0);
      poly.phi.back() = fit.coefficient(label).estimate;
      ++matched;
    }
  }
  return poly;
}

void check_scenario(const CapitalScenario& scenario, SampleWindow window) {
  if (scenario.overrides.empty()) throw SpecError("scenario '" + scenario.name + "' has no overrides");
  for (const auto& [year, rate] : scenario.overrides) {
    if (year < window.first || year > window.last) {
      throw SpecError("override year " + std::to_string(year) + " of scenario '" + scenario.name +
                      "' lies outside the simulation window");
    }
    if (scenario.log_growth && rate <= -1.0) {
      throw SpecError("growth rate must exceed -100% for a log-growth override");
    }
  }
}

struct Paths {
  AnnualSeries actual;
  std::vector<double> deviation;
};

Paths run(const Dataset& dataset, const FitResult& fit, const DynamicEquation& eq,
          const CapitalScenario& scenario, SampleWindow window) {
  if (window.last < window.first) throw SpecError("empty simulation window");
  check_scenario(scenario, window);
  const auto capital = apply_term(dataset, eq.capital, window.first, window.last);
  Paths p{apply_term(dataset, eq.dependent, window.first, window.last), {}};
  const auto path = scenario_capital_path(scenario, window, capital.values);
  p.deviation = propagate_deviation(fit, eq, capital.values, path);
  return p;
}

}  // namespace

std::vector<double> scenario_capital_path(const CapitalScenario& scenario, SampleWindow window,
                                          const std::vector<double>& capital_actual) {
  std::vector<double> out = capital_actual;
  if (static_cast<int>(out.size()) != window.size()) {
    throw SpecError("capital path does not cover the window");
  }
  for (int year = window.first; year <= window.last; ++year) {
    auto it = scenario.overrides.upper_bound(year);
    if (it == scenario.overrides.begin()) continue;
    const double g = std::prev(it)->second;
    out[static_cast<std::size_t>(year - window.first)] = scenario.log_growth ? std::log1p(g) : g;
  }
  return out;
}

std::vector<double> propagate_deviation(const FitResult& fit, const DynamicEquation& eq,
                                        const std::vector<double>& capital_actual,
                                        const std::vector<double>& capital_scenario) {
  if (capital_actual.size() != capital_scenario.size()) {
    throw SpecError("capital paths differ in length");
  }
  const auto poly = read_coefficients(fit, eq);
  std::vector<double> d(capital_actual.size(), 0.0);
  for (std::size_t t = 0; t < d.size(); ++t) {
    double v = poly.capital * (capital_scenario[t] - capital_actual[t]);
    for (std::size_t j = 1; j <= poly.phi.size() && j <= t; ++j) v += poly.phi[j - 1] * d[t - j];
    d[t] = v;
  }
  return d;
}

ScenarioResult simulate_unemployment(const Dataset& dataset, const FitResult& fit,
                                     const DynamicEquation& eq, const CapitalScenario& scenario,
                                     SampleWindow window, double eap) {
  const auto p = run(dataset, fit, eq, scenario, window);
  ScenarioResult r;
  r.name = scenario.name;
  r.baseline_path = p.actual;
  r.baseline_path.name = eq.dependent.display() + " (actual)";
  r.counterfactual_path = p.actual;
  r.counterfactual_path.name = eq.dependent.display() + " (" + scenario.name + ")";
  for (std::size_t t = 0; t < p.deviation.size(); ++t) r.counterfactual_path.values[t] += p.deviation[t];
  r.terminal_delta = p.deviation.back();
  r.derived["terminal_unemployment"] = r.counterfactual_path.values.back();
  r.derived["actual_unemployment"] = r.baseline_path.values.back();
  r.derived["jobs_created"] = -r.terminal_delta / 100.0 * eap;
  return r;
}

ScenarioResult simulate_exports(const Dataset& dataset, const FitResult& fit,
                                const DynamicEquation& eq, const CapitalScenario& scenario,
                                SampleWindow window, double terminal_actual_usd) {
  const auto p = run(dataset, fit, eq, scenario, window);
  ScenarioResult r;
  r.name = scenario.name;
  r.baseline_path = p.actual;
  r.baseline_path.name = eq.dependent.display() + " (actual)";
  r.counterfactual_path = p.actual;
  r.counterfactual_path.name = eq.dependent.display() + " (" + scenario.name + ")";
  for (std::size_t t = 0; t < p.deviation.size(); ++t) r.counterfactual_path.values[t] += p.deviation[t];
  r.terminal_delta = p.deviation.back();
  const double pct = std::expm1(r.terminal_delta);
  r.derived["export_change_pct"] = 100.0 * pct;
  r.derived["export_change_usd"] = pct * terminal_actual_usd;
  return r;
}

}  // namespace tsecon
