// support.hpp: shared fixtures for the unit and acceptance tests

#pragma once

#include "wqed/operator.hpp"

#include <Eigen/QR>

#include <random>

namespace wqed::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Matrix random_matrix(Index rows, Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = cplx(n(rng()), n(rng()));
  return m;
}

/// Full-rank random state G G^dag / Tr.
inline DensityMatrix random_density(const SubsystemLayout& layout) {
  const Matrix g = random_matrix(layout.dim(), layout.dim());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix::from_approximate(layout, rho);
}

/// Haar-distributed unitary from the QR of a Ginibre matrix.
inline Matrix random_unitary(Index dim) {
  const Eigen::HouseholderQR<Matrix> qr(random_matrix(dim, dim));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Index j = 0; j < dim; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
  return q;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace wqed::testing
