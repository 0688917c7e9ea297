#include "wqed/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace wqed {

namespace {

void require_dim(const LindbladModel& model, Index max_dim) {
  if (model.layout.dim() > max_dim) {
    std::ostringstream msg;
    msg << "Hilbert-space dimension " << model.layout.dim() << " exceeds the dense limit " << max_dim;
    throw std::invalid_argument(msg.str());
  }
}

/// Null vector of L from its SVD, after checking the null space is one-dimensional.
Vector svd_null_vector(const Matrix& L, const SolverOptions& options, bool check) {
  Eigen::BDCSVD<Matrix> svd(L, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();  // descending
  const Index n = s.size();
  if (check && n >= 2) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double floor = static_cast<double>(n) * eps * s(0);
    if (!(s(n - 2) > options.uniqueness_ratio * std::max(s(n - 1), floor))) {
      std::ostringstream msg;
      msg << "degenerate steady-state manifold: two smallest singular values " << s(n - 2) << " and "
          << s(n - 1);
      throw SolverError(msg.str());
    }
  }
  return svd.matrixV().col(n - 1);
}

}  // namespace

Vector vectorize(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvectorize(const Vector& v, Index dim) {
  if (v.size() != dim * dim) throw std::invalid_argument("unvectorize: length is not dim^2");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Liouvillian build_liouvillian(const LindbladModel& model, Index max_dim) {
  model.validate();
  require_dim(model, max_dim);
  const Index d = model.layout.dim();
  const Matrix I = Matrix::Identity(d, d);
  const Matrix& H = model.H.matrix();

  Matrix M = cplx(0.0, -1.0) * (Eigen::kroneckerProduct(I, H).eval() -
                                Eigen::kroneckerProduct(H.transpose(), I).eval());
  for (const auto& op : model.collapse_ops) {
    const Matrix& c = op.matrix();
    const Matrix cdc = c.adjoint() * c;
    M += Eigen::kroneckerProduct(c.conjugate(), c).eval();
    M -= 0.5 * (Eigen::kroneckerProduct(I, cdc).eval() + Eigen::kroneckerProduct(cdc.transpose(), I).eval());
  }
  return Liouvillian{model, std::move(M)};
}

Matrix apply_lindbladian(const LindbladModel& model, const Matrix& rho) {
  const Index d = model.layout.dim();
  if (rho.rows() != d || rho.cols() != d) throw std::invalid_argument("apply_lindbladian: dimension mismatch");
  Matrix heff = model.H.matrix();
  Matrix out = Matrix::Zero(d, d);
  for (const auto& op : model.collapse_ops) {
    const Matrix& c = op.matrix();
    heff -= cplx(0.0, 0.5) * (c.adjoint() * c);
    out += c * rho * c.adjoint();
  }
  out += cplx(0.0, -1.0) * (heff * rho - rho * heff.adjoint());
  return out;
}

double liouvillian_residual(const LindbladModel& model, const Matrix& rho) {
  return apply_lindbladian(model, rho).norm();
}

SteadyState steady_state(const LindbladModel& model, const SolverOptions& options) {
  if (model.collapse_ops.empty()) {
    throw std::invalid_argument("steady_state: model has no collapse operators");
  }
  const Liouvillian liou = build_liouvillian(model, options.max_dim);
  const Matrix& L = liou.matrix;
  const Index d = model.layout.dim();

  bool checked = false;
  if (options.uniqueness == UniquenessCheck::SingularValues) {
    svd_null_vector(L, options, true);
    checked = true;
  }

  // Row 0 is the population equation for rho_00; population rows sum to zero
  // (trace preservation), so swapping one for Tr(rho) = 1 keeps full rank.
  Matrix A = L;
  A.row(0) = vectorize(Matrix::Identity(d, d)).transpose();
  Vector b = Vector::Zero(d * d);
  b(0) = 1.0;

  Eigen::PartialPivLU<Matrix> lu(A);
  // rcond estimate plus pivot spread
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double pivot_ratio = pivots.minCoeff() / pivots.maxCoeff();
  Vector x;
  if (lu.rcond() >= options.min_rcond && pivot_ratio >= options.min_rcond) {
    x = lu.solve(b);
  } else {
    const bool check = !checked && options.uniqueness != UniquenessCheck::None;
    x = svd_null_vector(L, options, check);
  }

  Matrix rho = unvectorize(x, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const cplx tr = rho.trace();
  if (!(std::abs(tr) > 0.0)) throw SolverError("steady_state: null vector has zero trace");
  rho /= tr.real();

  const double residual = liouvillian_residual(model, rho);
  if (!(residual <= options.tol)) {
    std::ostringstream msg;
    msg << "steady_state: residual " << residual << " exceeds tolerance " << options.tol;
    throw SolverError(msg.str());
  }

  SteadyState out{DensityMatrix(model.layout, std::move(rho), std::max(kDefaultTol, options.tol)), residual, {}};
  if (options.compute_gap) out.gap = spectral_gap(model, options.max_dim);
  return out;
}

Vector liouvillian_spectrum(const LindbladModel& model, Index max_dim) {
  const Liouvillian liou = build_liouvillian(model, max_dim);
  Eigen::ComplexEigenSolver<Matrix> es(liou.matrix, false);
  if (es.info() != Eigen::Success) throw SolverError("Liouvillian eigensolve failed");
  return es.eigenvalues();
}

double spectral_gap(const LindbladModel& model, Index max_dim) {
  const Vector ev = liouvillian_spectrum(model, max_dim);
  if (ev.size() < 2) throw SolverError("spectral_gap: spectrum has a single eigenvalue");
  std::vector<Index> order(static_cast<std::size_t>(ev.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return std::abs(ev(a)) < std::abs(ev(b)); });
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < order.size(); ++k) gap = std::min(gap, std::abs(ev(order[k]).real()));
  return gap;
}

}  // namespace wqed
