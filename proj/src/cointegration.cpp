#include "tsecon/cointegration.hpp"

#include "tsecon/error.hpp"

namespace tsecon {

namespace {

void require_i1(const Term& term, const IntegrationOrders& orders) {
  const std::string label = term.display();
  const auto it = orders.find(label);
  if (it == orders.end()) {
    throw SpecError("no integration order supplied for '" + label + "'");
  }
  if (it->second != 1) {
    throw SpecError("'" + label + "' is flagged I(" + std::to_string(it->second) +
                    "); Engle-Granger needs I(1) inputs");
  }
}

}  // namespace

ModelSpec long_run_spec(Term dependent, std::vector<Term> regressors) {
  ModelSpec spec;
  spec.dependent = std::move(dependent);
  spec.regressors = std::move(regressors);
  spec.include_constant = false;
  return spec;
}

CointegrationResult engle_granger(const Dataset& dataset, const ModelSpec& spec, int residual_lag,
                                  const IntegrationOrders& orders) {
  if (spec.regressors.empty()) throw SpecError("cointegrating regression needs regressors");
  require_i1(spec.dependent, orders);
  for (const auto& t : spec.regressors) require_i1(t, orders);

  CointegrationResult out;
  out.long_run = ols_fit(dataset, spec);
  const int n_vars = static_cast<int>(spec.regressors.size()) + 1;
  if (n_vars > 6) throw SpecError("residual test p-values are tabulated for at most 6 variables");
  out.residual_test = df_residual_test(out.long_run.residuals, residual_lag, n_vars);
  out.cointegrated = out.residual_test.reject_5pct;
  return out;
}

}  // namespace tsecon
