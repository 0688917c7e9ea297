// lindblad.hpp: Liouvillian construction, steady states, spectra and time evolution

#pragma once

#include "wqed/model.hpp"
#include "wqed/operator.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wqed {

/// Raised when a numerical solve fails (degenerate steady state, integrator
/// underflow, eigen-solver failure).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr Index kDefaultMaxDim = 64;

/// Superoperator acting on column-stacked density matrices,
/// vec(A X B) = (B^T kron A) vec(X).
struct Liouvillian {
  LindbladModel model;
  Matrix matrix;
};

Liouvillian build_liouvillian(const LindbladModel& model, Index max_dim = kDefaultMaxDim);

/// Right-hand side of the master equation evaluated directly on a matrix.
Matrix apply_lindbladian(const LindbladModel& model, const Matrix& rho);

/// Frobenius norm of L(rho) (equal to the 2-norm of L vec(rho)).
double liouvillian_residual(const LindbladModel& model, const Matrix& rho);

Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, Index dim);

enum class UniquenessCheck {
  /// Second-smallest singular value of L must exceed ratio x smallest.
  SingularValues,
  /// Reciprocal condition estimate of the trace-bordered system; escalates to
  /// the singular-value test when the estimate is poor.
  ConditionEstimate,
  None,
};

struct SolverOptions {
  double tol = 1e-10;                 ///< bound on ||L rho||
  UniquenessCheck uniqueness = UniquenessCheck::SingularValues;
  double uniqueness_ratio = 1e3;
  double min_rcond = 1e-13;           ///< below this the LU path falls back to SVD
  bool compute_gap = false;
  Index max_dim = kDefaultMaxDim;
};

struct SteadyState {
  DensityMatrix rho;
  double residual = 0.0;
  std::optional<double> gap;
};

/// Unique steady state: one row of L (a population equation, which is linearly
/// dependent on the others) is replaced by the trace constraint and the square
/// system is solved by partial-pivot LU, with an SVD null-space fallback.
SteadyState steady_state(const LindbladModel& model, const SolverOptions& options = {});

/// Full spectrum of the Liouvillian (dense nonsymmetric eigensolve).
Vector liouvillian_spectrum(const LindbladModel& model, Index max_dim = kDefaultMaxDim);

/// Smallest |Re lambda| over the non-stationary eigenvalues; 1/gap estimates
/// the slowest relaxation time.
double spectral_gap(const LindbladModel& model, Index max_dim = kDefaultMaxDim);

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 1e-3;
  double trace_drift_tol = 1e-8;
  std::size_t max_steps = 5'000'000;  ///< per output interval
};

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  double max_trace_drift = 0.0;        ///< before per-point renormalization
  double max_hermiticity_error = 0.0;  ///< max |rho - rho^dag| entry of the raw integrator state
};

/// Adaptive Dormand-Prince 5(4) integration of the master equation, sampled
/// at every point of `times` (strictly increasing, times[0] is the start).
EvolutionTrace evolve(const LindbladModel& model, const DensityMatrix& rho0,
                      const std::vector<double>& times, const EvolveOptions& options = {});

}  // namespace wqed
