// entanglement.hpp: two-qubit entanglement and state-quality metrics

#pragma once

#include "wqed/model.hpp"
#include "wqed/operator.hpp"

namespace wqed {

/// Wootters concurrence of a two-qubit density matrix, in [0, 1].
double concurrence(const DensityMatrix& rho);

/// Concurrence of the (A_N, B_N) reduced state of an N-site chain, N >= 2.
double outer_pair_concurrence(const DensityMatrix& rho, const ChainSpec& spec);

/// Concurrence of the (A_j, B_j) reduced state.
double pair_concurrence(const DensityMatrix& rho, int site);

/// Reduced state of the (A_j, B_j) pair.
DensityMatrix pair_state(const DensityMatrix& rho, int site);

double purity(const DensityMatrix& rho);

/// <Bell|rho|Bell> on a two-qubit state.
double bell_fidelity(const DensityMatrix& rho, Bell which);

}  // namespace wqed
