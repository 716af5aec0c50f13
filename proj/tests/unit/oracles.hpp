#pragma once

// Reference computations that avoid the library's QR path: explicit normal
// equations, direct matrix powers and plain loops.

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tsecon/dataset.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline VectorXd normal_equations(const MatrixXd& X, const VectorXd& y) {
  const MatrixXd xtx = X.transpose() * X;
  return xtx.inverse() * (X.transpose() * y);
}

inline double ssr(const MatrixXd& X, const VectorXd& y) {
  return (y - X * normal_equations(X, y)).squaredNorm();
}

inline MatrixXd with_constant(const MatrixXd& X) {
  MatrixXd out(X.rows(), X.cols() + 1);
  out.col(0).setOnes();
  out.rightCols(X.cols()) = X;
  return out;
}

inline std::vector<double> gaussian(std::mt19937_64& rng, std::size_t n, double sd = 1.0) {
  std::normal_distribution<double> d(0.0, sd);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline tsecon::AnnualSeries series(const std::string& name, int start, std::vector<double> v) {
  return tsecon::AnnualSeries::make(name, start, std::move(v));
}

inline VectorXd as_vector(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace oracle
