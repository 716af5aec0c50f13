#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsecon/cointegration.hpp"
#include "tsecon/error.hpp"
#include "tsecon/montecarlo.hpp"
#include "tsecon/unitroot.hpp"

using namespace tsecon;

namespace {

std::vector<double> random_walk(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  auto e = oracle::gaussian(rng, n);
  for (int i = 1; i < n; ++i) e[i] += e[i - 1];
  return e;
}

// tau from an explicit regression of dy(t) on [det..., y(t-1), dy(t-1..t-p)].
double tau_oracle(const std::vector<double>& y, int p, Deterministic det) {
  const int n = static_cast<int>(y.size());
  const int rows = n - p - 1;
  const int ndet = det == Deterministic::none ? 0 : det == Deterministic::constant ? 1 : 2;
  Eigen::MatrixXd X(rows, ndet + 1 + p);
  Eigen::VectorXd dy(rows);
  for (int r = 0; r < rows; ++r) {
    const int t = r + p + 1;
    dy(r) = y[t] - y[t - 1];
    int c = 0;
    if (ndet >= 1) X(r, c++) = 1.0;
    if (ndet == 2) X(r, c++) = r + 1;
    X(r, c++) = y[t - 1];
    for (int j = 1; j <= p; ++j) X(r, c++) = y[t - j] - y[t - j - 1];
  }
  const auto b = oracle::normal_equations(X, dy);
  const double s2 = (dy - X * b).squaredNorm() / (rows - X.cols());
  const Eigen::MatrixXd inv = (X.transpose() * X).inverse();
  return b(ndet) / std::sqrt(s2 * inv(ndet, ndet));
}

}  // namespace

TEST(UnitRoot, TauMatchesExplicitRegression) {
  const auto y = random_walk(21, 80);
  const auto s = oracle::series("y", 1900, y);
  for (auto det : {Deterministic::none, Deterministic::constant, Deterministic::constant_and_trend}) {
    for (int p : {0, 1, 3}) {
      const auto r = adf_test(s, AdfSpec{det, p});
      EXPECT_NEAR(r.t_stat, tau_oracle(y, p, det), 1e-9) << to_string(det) << " p=" << p;
      EXPECT_EQ(r.n_used, 80 - p - 1);
      EXPECT_EQ(r.first_year, 1900 + p + 1);
    }
  }
}

TEST(UnitRoot, MacKinnonFivePercentPoints) {
  EXPECT_NEAR(mackinnon_p(-2.86, Deterministic::constant), 0.05, 0.003);
  EXPECT_NEAR(mackinnon_p(-3.41, Deterministic::constant_and_trend), 0.05, 0.003);
  EXPECT_NEAR(mackinnon_p(-1.94, Deterministic::none), 0.05, 0.003);
  EXPECT_LT(mackinnon_p(-6.0, Deterministic::constant), 1e-4);
  EXPECT_GT(mackinnon_p(1.0, Deterministic::constant), 0.99);
  // More variables push the critical value left.
  EXPECT_GT(mackinnon_p(-3.5, Deterministic::none, 3), mackinnon_p(-3.5, Deterministic::none, 1));
}

TEST(UnitRoot, StationarySeriesRejects) {
  std::mt19937_64 rng(22);
  auto e = oracle::gaussian(rng, 200);
  const auto r = adf_test(oracle::series("e", 1, e), AdfSpec{Deterministic::constant, 1});
  EXPECT_TRUE(r.reject_5pct);
  EXPECT_LT(r.p_value, 0.01);
}

TEST(UnitRoot, Errors) {
  EXPECT_THROW(adf_test(oracle::series("c", 1, std::vector<double>(30, 2.0)), AdfSpec{}), EstimationError);
  EXPECT_THROW(adf_test(oracle::series("s", 1, {1, 2, 4, 3}), AdfSpec{Deterministic::constant_and_trend, 2}),
               EstimationError);
  EXPECT_THROW(parse_deterministic("quadratic"), SpecError);
  EXPECT_EQ(parse_deterministic("ct"), Deterministic::constant_and_trend);
  EXPECT_EQ(parse_deterministic("nc"), Deterministic::none);
}

namespace {

IntegrationOrders all_i1() { return {{"x", 1}, {"y", 1}}; }

}  // namespace

TEST(Cointegration, ResidualsComeFromStaticRegression) {
  const auto ds = synthetic_pair(31, 120, true);
  const auto spec = long_run_spec(level("y"), {level("x")});
  const auto r = engle_granger(ds, spec, 0, all_i1());
  const auto x = oracle::as_vector(ds.get("x").values);
  const auto y = oracle::as_vector(ds.get("y").values);
  const double b = x.dot(y) / x.squaredNorm();
  EXPECT_NEAR(r.long_run.coefficients.at(0).estimate, b, 1e-10);
  const auto direct = df_residual_test(r.long_run.residuals, 0, 2);
  EXPECT_EQ(r.residual_test.t_stat, direct.t_stat);
  EXPECT_EQ(r.residual_test.n_vars, 2);
  EXPECT_TRUE(r.cointegrated);
}

TEST(Cointegration, RegressorOrderDoesNotMatter) {
  auto ds = synthetic_pair(32, 100, true);
  const auto w = synthetic_pair(33, 100, false);
  ds = ds.with_series(oracle::series("w", ds.get("x").start_year, w.get("y").values));
  IntegrationOrders orders = {{"x", 1}, {"y", 1}, {"w", 1}};
  const auto a = engle_granger(ds, long_run_spec(level("y"), {level("x"), level("w")}), 1, orders);
  const auto b = engle_granger(ds, long_run_spec(level("y"), {level("w"), level("x")}), 1, orders);
  EXPECT_NEAR(a.residual_test.t_stat, b.residual_test.t_stat, 1e-9);
  EXPECT_NEAR(a.long_run.coefficient("x").estimate, b.long_run.coefficient("x").estimate, 1e-12);
}

TEST(Cointegration, NonI1TermsRejected) {
  const auto ds = synthetic_pair(34, 60, true);
  const auto spec = long_run_spec(level("y"), {level("x")});
  EXPECT_THROW(engle_granger(ds, spec, 0, {{"x", 1}, {"y", 0}}), SpecError);
  EXPECT_THROW(engle_granger(ds, spec, 0, {{"y", 1}}), SpecError);
}

TEST(Cointegration, MonteCarloRates) {
  const auto r = engle_granger_rates(20101231, 100, 200);
  EXPECT_GE(r.cointegrated_pairs_detected, 90);
  EXPECT_GE(r.independent_walks_rejected, 90);
}
