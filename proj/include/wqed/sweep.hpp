// sweep.hpp: named chain parameters, steady-state metrics and grid sweeps

#pragma once

#include "wqed/lindblad.hpp"
#include "wqed/model.hpp"
#include "wqed/table.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace wqed {

/// Sets a named parameter on a chain spec. Names: omega (both drives),
/// omega_a, omega_b, gamma, eta, eta2, delta, t1, j (every hopping), j12, j23, ...
/// and the derived j12_ratio (J12 = value * omega_a). Throws
/// std::invalid_argument for unknown names.
void apply_parameter(ChainSpec& spec, const std::string& name, double value);
double read_parameter(const ChainSpec& spec, const std::string& name);
bool is_parameter(const std::string& name);

enum class Metric { Concurrence, OuterPairConcurrence, Purity, Gap, Fidelity };

std::string metric_name(Metric m);
/// Throws std::invalid_argument for unknown names.
Metric parse_metric(const std::string& name);

/// Metrics of the unique steady state of `spec`. Concurrence is that of the
/// driven (A1, B1) pair; fidelity is the outer pair's overlap with its target
/// Bell state (singlet on odd sites, triplet on even sites).
std::vector<double> evaluate_metrics(const ChainSpec& spec, const std::vector<Metric>& metrics,
                                     const SolverOptions& solver = {});

struct SweepAxis {
  std::string name;
  std::vector<double> values;

  static SweepAxis linear(std::string name, double lo, double hi, int points);
  /// Geometric grid; lo and hi must be positive.
  static SweepAxis log(std::string name, double lo, double hi, int points);
};

/// LU solve with the condition-estimate uniqueness check, for bulk evaluation.
SolverOptions fast_solver_options();

struct SweepSpec {
  ChainSpec base;
  std::vector<SweepAxis> axes;  ///< one or two; the first varies slowest
  std::vector<Metric> metrics{Metric::Concurrence};
  SolverOptions solver = fast_solver_options();
  int threads = 0;              ///< 0 = hardware concurrency
  std::size_t budget = 250'000; ///< maximum number of grid points

  /// Throws std::invalid_argument naming the offending axis.
  void validate() const;
};

/// One row per grid point, in grid order; failed points carry NaN metrics and
/// an error tag naming the grid point.
ResultTable sweep(const SweepSpec& spec);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Exceptions
/// escaping `body` are rethrown after all workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace wqed
