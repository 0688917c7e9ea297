// slh.hpp: SLH network elements and the series (cascade) product

#pragma once

#include "wqed/operator.hpp"

#include <vector>

namespace wqed {

/// Input-output network element (S, L, H).
///
/// Scattering entries are restricted to complex scalars (times identity on
/// the system space), so S is stored as a plain n x n complex matrix. The
/// coupling vector holds one system operator per port.
struct SLHTriple {
  Matrix S;
  std::vector<Operator> L;
  Operator H;

  int n_ports() const { return static_cast<int>(L.size()); }
  const SubsystemLayout& layout() const { return H.layout(); }

  /// Checks S unitary and H Hermitian within `tol`; throws otherwise.
  void validate(double tol = 1e-12) const;
};

/// Pass-through element: S = I, L = 0, H = 0.
SLHTriple identity_triple(int n_ports, const SubsystemLayout& layout);

/// Driven qubit coupled to port 0 of a two-port waveguide:
/// S = I, L = (sqrt(gamma) sigma_minus, 0), H = (delta/2) sigma_z + (omega/2) sigma_x.
SLHTriple qubit_triple(double delta, double omega, double gamma, const std::string& site,
                       const SubsystemLayout& layout);

/// Lossy link modelled as a beamsplitter with transmission amplitude eta:
/// S = [[eta, -sqrt(1-eta^2)], [sqrt(1-eta^2), eta]], L = 0, H = 0.
SLHTriple beamsplitter_triple(double eta, const SubsystemLayout& layout);

/// g2 fed by the output of g1:
/// (S2 S1, L2 + S2 L1, H1 + H2 + (L2^dag S2 L1 - L1^dag S2^dag L2) / 2i).
SLHTriple series_compose(const SLHTriple& g2, const SLHTriple& g1);

}  // namespace wqed
