// analytic.hpp: closed-form steady states, effective storage-pair model and rate estimates
//
// Phase conventions follow the operator basis of operator.hpp (sigma_z =
// diag(1, -1) with |0> the ground state) and the Hamiltonian of build_model.
// Closed forms quoted in other conventions differ from these by complex
// conjugation, which is why comparisons between state families use overlap
// moduli.

#pragma once

#include "wqed/model.hpp"
#include "wqed/operator.hpp"

#include <vector>

namespace wqed {

/// Dark steady state of the lossless driven pair:
/// |00> - sqrt(2) Omega / (2 Delta + i gamma) |S>, normalized.
PureState psi0(double omega, double delta, double gamma);

/// Pure steady state of the lossless 2+2 chain, normalized:
/// i Omega^2/(gamma J12) |S1 T2> + Omega/(sqrt(2) J12) |0_1 T2> - |0_1 0_2>.
PureState psi2(double omega, double gamma, double j12);

/// Pure steady state of the lossless 3+3 chain, normalized:
/// |00S> - Omega/(sqrt(2) J12) |0TS> - i Omega^2/(gamma J12) |STS>
///   - (J23/J12) |S00> + i gamma J23/(sqrt(2) Omega J12) |000>.
PureState psi3(double omega, double gamma, double j12, double j23);

/// Hole-pair condensate steady state of a lossless, undetuned, symmetrically
/// driven chain with N <= 4:
///   (1 - i gamma/(2 Omega) tau_1) exp[-i gamma/(2 Omega^2) sum_j (-1)^j J_j tau_j tau_{j+1}] |STST...>
/// where tau_j maps the reference Bell pair on site j to sqrt(2)|0_j>. The
/// exponential is summed exactly; it terminates on the reference state.
PureState psi_hole_pair(const ChainSpec& spec);

struct DarkStateReport {
  std::vector<double> collapse_norms;  ///< ||c_k psi||
  double energy = 0.0;                 ///< <psi|H|psi>
  double energy_residual = 0.0;        ///< ||H psi - <H> psi||
  double liouvillian_residual = 0.0;   ///< ||L(|psi><psi|)||
  bool passed = false;
};

DarkStateReport verify_dark_state(const PureState& state, const LindbladModel& model, double tol = 1e-9);

/// Storage-pair model obtained by eliminating a weakly excited driven pair.
struct EffectiveModel {
  double omega_eff = 0.0;  ///< 2 Omega J12 / gamma
  double gamma_eff = 0.0;  ///< 4 J12^2 / gamma
  double eta = 1.0;        ///< not renormalized
  LindbladModel model;     ///< on the layout {A2, B2}
};

/// H = (Oeff/2)[sx_A + (2 eta - 1) sx_B] + i (eta geff / 2)(s+_A s-_B - h.c.),
/// L1 = sqrt(geff)(eta s-_A + s-_B), L2 = sqrt(geff (1 - eta^2)) s-_A.
EffectiveModel effective_model(double omega, double gamma, double j12, double eta);

struct EliminationResult {
  LindbladModel model;        ///< on the layout {A2, B2}
  Matrix manifold_inverse;    ///< H_NH^-1 on span{|01>, |10>} of (A1, B1)
};

/// Projection-based elimination of the (A1, B1) pair of a 2+2 model: ground
/// manifold = pair 1 in vacuum, excited manifold = pair 1 singly excited.
/// Evaluates
///   H_eff = H_g - 1/2 V- [H_NH^-1 + (H_NH^-1)^dag] V+,   L_k = c_k H_NH^-1 V+,
/// moves the constant parts of L_k into the Hamiltonian, applies +pi/2 and
/// -pi/2 z-rotations on A2 and B2, and fixes each jump operator's global phase.
EliminationResult adiabatic_eliminate(const LindbladModel& model_2p2, const ChainSpec& spec);

/// Rotates a jump operator's global phase so its largest entry (first in
/// column-major order among ties) is real and positive.
Operator canonical_jump_phase(const Operator& op);

/// Steady-state population of |S1><S1| in the lossless 2+2 chain.
double singlet_population(double omega, double gamma, double j12);

struct RateEstimates {
  double gamma_loss = 0.0;  ///< <n1> (1 - eta^2) gamma
  double gamma_rel = 0.0;   ///< gamma_eff^3 / Omega_eff^2
};

RateEstimates rate_estimates(double omega, double gamma, double j12, double eta);

}  // namespace wqed
