#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsecon/error.hpp"
#include "tsecon/regress.hpp"
#include "tsecon/tsls.hpp"

using namespace tsecon;

namespace {

// y = 1 + 0.5 x1 - 2 x2 + noise over 1950..1950+n-1.
Dataset linear_data(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  auto x1 = oracle::gaussian(rng, n);
  auto x2 = oracle::gaussian(rng, n);
  auto e = oracle::gaussian(rng, n, 0.3);
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) y[i] = 1.0 + 0.5 * x1[i] - 2.0 * x2[i] + e[i];
  return Dataset::from_series({oracle::series("y", 1950, y), oracle::series("x1", 1950, x1),
                               oracle::series("x2", 1950, x2)});
}

ModelSpec spec_xy(bool constant = true) {
  ModelSpec s;
  s.dependent = level("y");
  s.regressors = {level("x1"), level("x2")};
  s.include_constant = constant;
  return s;
}

}  // namespace

TEST(Regress, MatchesNormalEquations) {
  const auto ds = linear_data(1, 60);
  const auto d = build_design(ds, spec_xy());
  const auto fit = ols_fit(d);
  const auto b = oracle::normal_equations(d.X, d.y);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(fit.coefficients[j].estimate, b(j), 1e-10);
  const Eigen::MatrixXd cov = (d.X.transpose() * d.X).inverse() * (fit.ssr / (60 - 3));
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(fit.coefficients[j].std_error, std::sqrt(cov(j, j)), 1e-10);
  EXPECT_NEAR(fit.ssr, oracle::ssr(d.X, d.y), 1e-10);
  EXPECT_EQ(fit.coefficients[0].label, "const");
  EXPECT_EQ(fit.n_obs, 60);
}

TEST(Regress, InformationCriteriaAndLikelihood) {
  const auto fit = ols_fit(linear_data(2, 40), spec_xy());
  const double n = 40, k = 3;
  const double ll = -n / 2 * (1 + std::log(2 * std::numbers::pi) + std::log(fit.ssr / n));
  EXPECT_NEAR(fit.log_likelihood, ll, 1e-10);
  EXPECT_NEAR(fit.aic, -2 * ll + 2 * k, 1e-10);
  EXPECT_NEAR(fit.bic, -2 * ll + k * std::log(n), 1e-10);
  EXPECT_NEAR(fit.hqc, -2 * ll + 2 * k * std::log(std::log(n)), 1e-10);
}

TEST(Regress, CenteredStatisticsWithConstant) {
  const auto ds = linear_data(3, 50);
  const auto d = build_design(ds, spec_xy());
  const auto fit = ols_fit(d);
  const double tss = (d.y.array() - d.y.mean()).square().sum();
  EXPECT_NEAR(fit.r_squared, 1 - fit.ssr / tss, 1e-12);
  EXPECT_NEAR(fit.adj_r_squared, 1 - (1 - fit.r_squared) * 49.0 / 47.0, 1e-12);
  EXPECT_EQ(fit.f_df1, 2);
  EXPECT_EQ(fit.f_df2, 47);
  EXPECT_NEAR(fit.f_stat, ((tss - fit.ssr) / 2) / (fit.ssr / 47), 1e-8);
}

TEST(Regress, UncenteredStatisticsWithoutConstant) {
  const auto ds = linear_data(4, 50);
  const auto d = build_design(ds, spec_xy(false));
  const auto fit = ols_fit(d);
  EXPECT_NEAR(fit.r_squared, 1 - fit.ssr / d.y.squaredNorm(), 1e-12);
  EXPECT_EQ(fit.f_df1, 2);
  EXPECT_EQ(fit.f_df2, 48);
}

TEST(Regress, DurbinWatsonAndRho) {
  const auto fit = ols_fit(linear_data(5, 30), spec_xy());
  const auto& e = fit.residuals.values;
  double num = 0, cross = 0, den = 0;
  for (std::size_t t = 0; t < e.size(); ++t) {
    den += e[t] * e[t];
    if (t > 0) {
      num += (e[t] - e[t - 1]) * (e[t] - e[t - 1]);
      cross += e[t] * e[t - 1];
    }
  }
  EXPECT_NEAR(fit.durbin_watson, num / den, 1e-12);
  EXPECT_NEAR(fit.rho1, cross / den, 1e-12);
}

TEST(Regress, RankDeficientDesignFails) {
  auto ds = linear_data(6, 30);
  auto x1 = ds.get("x1").values;
  for (auto& v : x1) v *= 3.0;
  ds = ds.with_series(oracle::series("x1x3", 1950, x1));
  auto spec = spec_xy();
  spec.regressors.push_back(level("x1x3"));
  EXPECT_THROW(ols_fit(ds, spec), EstimationError);
}

TEST(Regress, TooFewObservations) {
  auto spec = spec_xy();
  spec.sample = SampleWindow{1950, 1952};
  EXPECT_THROW(ols_fit(linear_data(7, 30), spec), EstimationError);
}

TEST(Regress, DuplicateLabelsRejected) {
  auto spec = spec_xy();
  spec.regressors.push_back(level("x1"));
  EXPECT_THROW(build_design(linear_data(8, 30), spec), SpecError);
}

TEST(Regress, DummiesAreIndicators) {
  auto spec = spec_xy();
  spec.dummies = {Dummy{"D60", {1960}}};
  const auto d = build_design(linear_data(9, 30), spec);
  EXPECT_EQ(d.labels.back(), "D60");
  EXPECT_EQ(d.X.col(3).sum(), 1.0);
  EXPECT_EQ(d.X(10, 3), 1.0);
}

TEST(Regress, VifFromAuxiliaryRegressions) {
  const auto ds = linear_data(10, 80);
  const auto v = vif(ds, spec_xy());
  ASSERT_EQ(v.size(), 2u);
  const auto x1 = oracle::as_vector(ds.get("x1").values);
  const auto x2 = oracle::as_vector(ds.get("x2").values);
  Eigen::MatrixXd aux(80, 2);
  aux.col(0).setOnes();
  aux.col(1) = x2;
  const double tss = (x1.array() - x1.mean()).square().sum();
  const double r2 = 1 - oracle::ssr(aux, x1) / tss;
  EXPECT_NEAR(v[0].value, 1 / (1 - r2), 1e-10);
  EXPECT_FALSE(v[0].infinite);
}

TEST(Tsls, InstrumentingWithRegressorsIsOls) {
  const auto ds = linear_data(11, 40);
  TslsSpec s;
  s.model = spec_xy();
  s.endogenous = {"x1"};
  s.instruments = {level("x1")};
  const auto iv = tsls_fit(ds, s);
  const auto ols = ols_fit(ds, s.model);
  for (std::size_t j = 0; j < ols.coefficients.size(); ++j) {
    EXPECT_EQ(iv.fit.coefficients[j].estimate, ols.coefficients[j].estimate);
    EXPECT_EQ(iv.fit.coefficients[j].std_error, ols.coefficients[j].std_error);
  }
  EXPECT_EQ(iv.fit.ssr, ols.ssr);
}

TEST(Tsls, JustIdentifiedMatchesIvFormula) {
  std::mt19937_64 rng(12);
  const int n = 200;
  auto z = oracle::gaussian(rng, n);
  auto v = oracle::gaussian(rng, n);
  auto e = oracle::gaussian(rng, n);
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = z[i] + v[i] + 0.8 * e[i];
    y[i] = 2.0 + 1.5 * x[i] + e[i];
  }
  const auto ds = Dataset::from_series({oracle::series("y", 1, y), oracle::series("x", 1, x),
                                        oracle::series("z", 1, z)});
  TslsSpec s;
  s.model.dependent = level("y");
  s.model.regressors = {level("x")};
  s.endogenous = {"x"};
  s.instruments = {level("z")};
  const auto iv = tsls_fit(ds, s);

  Eigen::MatrixXd X(n, 2), Z(n, 2);
  X.col(0).setOnes();
  X.col(1) = oracle::as_vector(x);
  Z.col(0).setOnes();
  Z.col(1) = oracle::as_vector(z);
  const Eigen::VectorXd b = (Z.transpose() * X).inverse() * (Z.transpose() * oracle::as_vector(y));
  EXPECT_NEAR(iv.fit.coefficients[0].estimate, b(0), 1e-10);
  EXPECT_NEAR(iv.fit.coefficients[1].estimate, b(1), 1e-10);
  EXPECT_TRUE(iv.fit.normal_inference);

  // Structural residuals, not second-stage ones.
  const Eigen::VectorXd u = oracle::as_vector(y) - X * b;
  EXPECT_NEAR(iv.fit.ssr, u.squaredNorm(), 1e-8);
  EXPECT_EQ(iv.first_stage.size(), 1u);
  EXPECT_GT(iv.first_stage[0].excluded_f, 10.0);
}

TEST(Tsls, OrderConditionEnforced) {
  const auto ds = linear_data(13, 40);
  TslsSpec s;
  s.model = spec_xy();
  s.endogenous = {"x1", "x2"};
  s.instruments = {level("x1")};
  EXPECT_THROW(tsls_fit(ds, s), SpecError);
  s.endogenous = {"nope"};
  EXPECT_THROW(tsls_fit(ds, s), SpecError);
}
