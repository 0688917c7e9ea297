// model.hpp: Lindblad models for driven cascaded qubit chains

#pragma once

#include "wqed/operator.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wqed {

/// Two mirror-symmetric chains of `n` qubits whose first sites (A1, B1)
/// couple to a chiral waveguide in the order A1 -> B1.
///
/// All rates and frequencies share one unit (angular); `t1` is a time in the
/// inverse of that unit.
struct ChainSpec {
  int n = 1;
  double gamma = 1.0;   ///< waveguide coupling rate
  double eta = 1.0;     ///< transmission amplitude; eta^2 is the transmission probability
  double omega_a = 0.0; ///< Rabi drive on A1
  double omega_b = 0.0; ///< Rabi drive on B1
  double delta = 0.0;   ///< detuning, +delta on A1 and -delta on B1
  std::vector<double> hopping;  ///< J_{j,j+1}, length n-1, shared by both chains
  std::optional<double> t1;     ///< intrinsic relaxation time applied to every qubit
  std::map<std::string, double> t1_override;  ///< per-qubit T1, keyed by site label

  double eta2() const { return eta * eta; }
  void set_eta2(double eta2);
  void set_omega(double omega) { omega_a = omega_b = omega; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

/// Fully specified open system: d(rho)/dt = -i[H, rho] + sum_k D[c_k] rho.
/// Rates are absorbed into the collapse operator amplitudes.
struct LindbladModel {
  SubsystemLayout layout;
  Operator H;
  std::vector<Operator> collapse_ops;

  /// Checks layouts agree and H is Hermitian within `tol`.
  void validate(double tol = 1e-12) const;
};

/// Hand-built model:
///   H = (Oa/2) sx_A1 + (Ob/2) sx_B1 + (delta/2)(sz_A1 - sz_B1)
///       + i (eta gamma / 2)(s+_A1 s-_B1 - h.c.) + sum_j,s J_j (s+_{s,j} s-_{s,j+1} + h.c.)
///   c1 = sqrt(gamma) (eta s-_A1 + s-_B1), c2 = sqrt(gamma (1 - eta^2)) s-_A1,
///   plus sqrt(1/T1) s- on every qubit when T1 is set.
/// Collapse operators that vanish identically are omitted.
LindbladModel build_model(const ChainSpec& spec);

/// Same model derived by cascading qubit A1, a beamsplitter and qubit B1
/// through the SLH series product; hopping and intrinsic decay are added
/// afterwards.
LindbladModel model_from_slh(const ChainSpec& spec);

/// Relabels A <-> B sites of a chain model.
LindbladModel swap_chains(const LindbladModel& model);

}  // namespace wqed
