#include "tsecon/montecarlo.hpp"

#include <cmath>
#include <random>

#include "tsecon/cointegration.hpp"
#include "tsecon/dynamics.hpp"

namespace tsecon {

namespace {

double quasi_ssr(const std::vector<double>& y, const std::vector<std::vector<double>>& x,
                 bool constant, double rho) {
  const auto n = static_cast<Eigen::Index>(y.size()) - 1;
  const auto k = static_cast<Eigen::Index>(x.size()) + (constant ? 1 : 0);
  Matrix X(n, k);
  Vector v(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    v(t) = y[t + 1] - rho * y[t];
    Eigen::Index c = 0;
    if (constant) X(t, c++) = 1.0 - rho;
    for (const auto& col : x) X(t, c++) = col[t + 1] - rho * col[t];
  }
  return solve_least_squares(X, v).ssr;
}

}  // namespace

double grid_search_rho(const std::vector<double>& y, const std::vector<std::vector<double>>& x,
                       bool constant) {
  double best = 0.0;
  double best_ssr = quasi_ssr(y, x, constant, 0.0);
  double step = 0.01;
  double lo = -0.99;
  double hi = 0.99;
  for (int pass = 0; pass < 4; ++pass) {
    for (double r = lo; r <= hi + 1e-12; r += step) {
      const double s = quasi_ssr(y, x, constant, r);
      if (s < best_ssr) {
        best_ssr = s;
        best = r;
      }
    }
    lo = std::max(-0.999, best - step);
    hi = std::min(0.999, best + step);
    step /= 10.0;
  }
  return best;
}

RhoRecovery cochrane_orcutt_recovery(std::uint64_t seed, int replications, int n, double rho,
                                     double tolerance) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RhoRecovery out;
  out.replications = replications;
  out.rho_true = rho;
  out.tolerance = tolerance;
  double sum_sq_grid = 0.0;
  for (int r = 0; r < replications; ++r) {
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> y(x.size());
    double u = normal(rng) / std::sqrt(1.0 - rho * rho);
    for (std::size_t t = 0; t < x.size(); ++t) {
      x[t] = 5.0 + 2.0 * normal(rng);
      if (t > 0) u = rho * u + normal(rng);
      y[t] = 1.0 + 2.0 * x[t] + u;
    }
    auto ds = Dataset::from_series({AnnualSeries::make("x", 1900, x), AnnualSeries::make("y", 1900, y)});
    ArSpec spec;
    spec.model.dependent = level("y");
    spec.model.regressors = {level("x")};
    spec.ar_lags = {1};
    spec.max_iterations = 200;
    spec.convergence_rel_tol = 1e-12;
    const double co = cochrane_orcutt_fit(ds, spec).rho.front().estimate;
    const double grid = grid_search_rho(y, {x}, true);
    out.agree_with_oracle += std::abs(co - grid) <= tolerance;
    out.mean_rho_co += co;
    out.mean_rho_grid += grid;
    sum_sq_grid += grid * grid;
  }
  out.mean_rho_co /= replications;
  out.mean_rho_grid /= replications;
  out.sd_rho_grid =
      std::sqrt(std::max(0.0, sum_sq_grid / replications - out.mean_rho_grid * out.mean_rho_grid));
  return out;
}

Dataset synthetic_pair(std::uint64_t seed, int n, bool cointegrated, int start_year) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> y(x.size());
  double wx = 0.0;
  double wy = 0.0;
  double noise = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    wx += normal(rng);
    wy += normal(rng);
    noise = 0.5 * noise + normal(rng);
    x[t] = wx;
    y[t] = cointegrated ? wx + noise : wy;
  }
  return Dataset::from_series(
      {AnnualSeries::make("x", start_year, x), AnnualSeries::make("y", start_year, y)});
}

CointegrationRates engle_granger_rates(std::uint64_t seed, int replications, int n) {
  CointegrationRates out;
  out.replications = replications;
  const IntegrationOrders orders{{"x", 1}, {"y", 1}};
  const auto spec = long_run_spec(level("y"), {level("x")});
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(2 * replications));
  std::mt19937_64 master(seed);
  for (auto& s : seeds) s = master();
  for (int r = 0; r < replications; ++r) {
    const auto coint = synthetic_pair(seeds[2 * static_cast<std::size_t>(r)], n, true);
    const auto indep = synthetic_pair(seeds[2 * static_cast<std::size_t>(r) + 1], n, false);
    out.cointegrated_pairs_detected += engle_granger(coint, spec, 1, orders).cointegrated;
    out.independent_walks_rejected += !engle_granger(indep, spec, 1, orders).cointegrated;
  }
  return out;
}

}  // namespace tsecon
