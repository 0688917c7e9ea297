// optimize.hpp: steady-state concurrence maximization over drive and hopping rates

#pragma once

#include "wqed/lindblad.hpp"
#include "wqed/model.hpp"
#include "wqed/sweep.hpp"
#include "wqed/table.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace wqed {

struct FreeParameter {
  std::string name;  ///< any name accepted by apply_parameter
  double lower = 1e-4;
  double upper = 10.0;
};

enum class Objective {
  PairConcurrence,       ///< driven (A1, B1) pair
  OuterPairConcurrence,  ///< (A_N, B_N) pair, N >= 2
};

struct OptimizeSpec {
  ChainSpec base;
  std::vector<FreeParameter> free;
  Objective objective = Objective::OuterPairConcurrence;
  int grid_points = 9;                 ///< log-grid seed points per parameter
  std::size_t max_evaluations = 4000;  ///< includes the seed grid
  double xtol = 1e-6;                  ///< simplex diameter in log space
  double ftol = 1e-10;                 ///< objective spread across the simplex
  int restarts = 2;
  SolverOptions solver = fast_solver_options();
  int threads = 0;

  /// Throws std::invalid_argument naming the offending parameter.
  void validate() const;
};

struct OptimizeResult {
  ChainSpec best_spec;
  std::vector<double> best_parameters;  ///< in the order of OptimizeSpec::free
  double best_value = 0.0;  ///< re-evaluated with the full uniqueness check
  double seed_value = 0.0;  ///< best value on the seed grid
  std::size_t evaluations = 0;
  bool budget_exhausted = false;
  ResultTable iterates;     ///< every evaluation: stage (0 grid, 1 simplex), parameters, objective
};

double objective_value(const ChainSpec& spec, Objective objective, const SolverOptions& solver = {});

/// Best point of a log-grid seed refined by Nelder-Mead in log coordinates,
/// clipped to the bounds. On budget exhaustion the best point so far is
/// returned with `budget_exhausted` set.
OptimizeResult optimize(const OptimizeSpec& spec);

}  // namespace wqed
