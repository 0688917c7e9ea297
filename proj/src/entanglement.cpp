#include "wqed/entanglement.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace wqed {

namespace {

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.layout().size() != 2 || rho.layout().dim() != 4) {
    throw std::invalid_argument(std::string(what) + ": two-qubit state required");
  }
}

// Eigenvalues of rho * rho_tilde through the Hermitian form sqrt(rho) rho_tilde sqrt(rho).
std::array<double, 4> hermitian_form_eigenvalues(const Matrix& rho, const Matrix& flipped) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt_rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  Matrix r = sqrt_rho * flipped * sqrt_rho;
  r = 0.5 * (r + r.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es2(r, Eigen::EigenvaluesOnly);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = es2.eigenvalues()(i);
  return out;
}

}  // namespace

double concurrence(const DensityMatrix& state) {
  require_two_qubits(state, "concurrence");
  const Matrix& rho = state.matrix();
  Matrix yy = Matrix::Zero(4, 4);  // sigma_y (x) sigma_y
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix flipped = yy * rho.conjugate() * yy;

  std::array<double, 4> lambda{};
  Eigen::ComplexEigenSolver<Matrix> es(rho * flipped, false);
  bool well_conditioned = es.info() == Eigen::Success;
  if (well_conditioned) {
    for (int i = 0; i < 4; ++i) {
      const cplx ev = es.eigenvalues()(i);
      if (ev.real() < -kDefaultTol || std::abs(ev.imag()) > 1e-8) well_conditioned = false;
      lambda[i] = ev.real();
    }
  }
  if (!well_conditioned) lambda = hermitian_form_eigenvalues(rho, flipped);

  std::array<double, 4> roots{};
  for (int i = 0; i < 4; ++i) roots[i] = std::sqrt(std::max(lambda[i], 0.0));
  std::sort(roots.begin(), roots.end(), std::greater<>());
  const double c = roots[0] - roots[1] - roots[2] - roots[3];
  return std::clamp(c, 0.0, 1.0);
}

DensityMatrix pair_state(const DensityMatrix& rho, int site) {
  const std::string a = "A" + std::to_string(site);
  const std::string b = "B" + std::to_string(site);
  if (!rho.layout().contains(a) || !rho.layout().contains(b)) {
    throw std::invalid_argument("pair_state: site " + std::to_string(site) + " not in layout");
  }
  if (rho.layout().size() == 2) return rho;
  return partial_trace(rho, {a, b});
}

double pair_concurrence(const DensityMatrix& rho, int site) { return concurrence(pair_state(rho, site)); }

double outer_pair_concurrence(const DensityMatrix& rho, const ChainSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("outer_pair_concurrence: chain needs at least two sites");
  if (rho.layout().size() != static_cast<std::size_t>(2 * spec.n)) {
    throw std::invalid_argument("outer_pair_concurrence: state does not match chain length");
  }
  return pair_concurrence(rho, spec.n);
}

double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

double bell_fidelity(const DensityMatrix& rho, Bell which) {
  require_two_qubits(rho, "bell_fidelity");
  const PureState bell = bell_state(which, rho.layout());
  const Vector& v = bell.amplitudes();
  return std::clamp(v.dot(rho.matrix() * v).real(), 0.0, 1.0);
}

}  // namespace wqed
