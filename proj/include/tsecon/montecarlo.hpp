#pragma once

#include <cstdint>

#include "tsecon/dataset.hpp"

namespace tsecon {

/// Seeded synthetic checks for the estimators whose published targets need the
/// unpublished benefits series.
struct RhoRecovery {
  int replications = 0;
  double rho_true = 0.0;
  int agree_with_oracle = 0;  ///< |rho_co - rho_grid| <= tolerance
  double mean_rho_co = 0.0;
  double mean_rho_grid = 0.0;
  double sd_rho_grid = 0.0;  ///< across replications: the Monte-Carlo band
  double tolerance = 0.0;
};

/// y = 1 + 2 x + u, u(t) = rho u(t-1) + e(t). Each replication compares the
/// Cochrane-Orcutt estimate with a grid search of the same SSR criterion.
RhoRecovery cochrane_orcutt_recovery(std::uint64_t seed, int replications, int n, double rho,
                                     double tolerance = 0.02);

/// SSR of the quasi-differenced regression minimized over a grid of rho (then refined).
double grid_search_rho(const std::vector<double>& y, const std::vector<std::vector<double>>& x,
                       bool constant);

struct CointegrationRates {
  int replications = 0;
  int cointegrated_pairs_detected = 0;      ///< y = x + AR(1) noise
  int independent_walks_rejected = 0;  ///< two unrelated random walks classified as not cointegrated
};

CointegrationRates engle_granger_rates(std::uint64_t seed, int replications, int n);

/// Series "x" (a random walk) and "y": x plus AR(1) noise when `cointegrated`,
/// otherwise an unrelated random walk.
Dataset synthetic_pair(std::uint64_t seed, int n, bool cointegrated, int start_year = 1800);

}  // namespace tsecon
