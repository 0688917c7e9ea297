#include "wqed/slh.hpp"

#include <cmath>
#include <stdexcept>

namespace wqed {

void SLHTriple::validate(double tol) const {
  const Index n = static_cast<Index>(L.size());
  if (S.rows() != n || S.cols() != n) throw std::invalid_argument("SLHTriple: S shape does not match port count");
  for (const auto& l : L) {
    if (!(l.layout() == H.layout())) throw std::invalid_argument("SLHTriple: coupling operator on a different layout");
  }
  if ((S.adjoint() * S - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("SLHTriple: scattering matrix is not unitary");
  }
  if (!H.is_hermitian(tol)) throw std::invalid_argument("SLHTriple: Hamiltonian is not Hermitian");
}

SLHTriple identity_triple(int n_ports, const SubsystemLayout& layout) {
  if (n_ports < 1) throw std::invalid_argument("identity_triple: need at least one port");
  return SLHTriple{Matrix::Identity(n_ports, n_ports),
                   std::vector<Operator>(static_cast<std::size_t>(n_ports), Operator::zero(layout)),
                   Operator::zero(layout)};
}

SLHTriple qubit_triple(double delta, double omega, double gamma, const std::string& site,
                       const SubsystemLayout& layout) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("qubit_triple: gamma must be non-negative");
  SLHTriple t = identity_triple(2, layout);
  t.L[0] = std::sqrt(gamma) * pauli(site, Pauli::Minus, layout);
  t.H = 0.5 * delta * pauli(site, Pauli::Z, layout) + 0.5 * omega * pauli(site, Pauli::X, layout);
  return t;
}

SLHTriple beamsplitter_triple(double eta, const SubsystemLayout& layout) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("beamsplitter_triple: eta must lie in [0, 1]");
  SLHTriple t = identity_triple(2, layout);
  const double r = std::sqrt(1.0 - eta * eta);
  t.S << eta, -r, r, eta;
  return t;
}

SLHTriple series_compose(const SLHTriple& g2, const SLHTriple& g1) {
  if (g2.n_ports() != g1.n_ports()) throw std::invalid_argument("series_compose: port count mismatch");
  if (!(g2.layout() == g1.layout())) throw std::invalid_argument("series_compose: layout mismatch");
  const int n = g1.n_ports();
  const SubsystemLayout& layout = g1.layout();

  // S2 L1 as a vector of operators.
  std::vector<Operator> s2l1(static_cast<std::size_t>(n), Operator::zero(layout));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s2l1[i] += g2.S(i, j) * g1.L[j];
  }

  SLHTriple out{g2.S * g1.S, {}, g1.H + g2.H};
  out.L.reserve(static_cast<std::size_t>(n));
  Operator cross = Operator::zero(layout);  // L2^dag S2 L1
  for (int i = 0; i < n; ++i) {
    out.L.push_back(g2.L[i] + s2l1[i]);
    cross += g2.L[i].adjoint() * s2l1[i];
  }
  out.H += cplx(0.0, -0.5) * (cross - cross.adjoint());
  return out;
}

}  // namespace wqed
