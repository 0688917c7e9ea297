// figures.hpp: figure-replica pipelines: result tables plus SVG plots

#pragma once

#include "wqed/table.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace wqed {

struct FigureOptions {
  int resolution = 0;       ///< points per axis; 0 selects the figure default
  int threads = 0;
  int grid_points = 9;      ///< optimizer seed points per free parameter
  std::size_t max_evaluations = 4000;
  std::vector<double> eta2; ///< transmission grid for the eta^2 scans; empty selects the default
};

struct FigureResult {
  std::string id;
  ResultTable table;
  std::string svg;
};

const std::vector<std::string>& figure_ids();

/// Throws std::invalid_argument for unknown ids.
FigureResult reproduce_figure(const std::string& id, const FigureOptions& options = {});

struct Maximum1D {
  double x = 0.0;
  double value = 0.0;
};

/// Log-grid scan of f on [lo, hi] refined by golden section around the best
/// grid point. Non-finite values count as -inf.
Maximum1D maximize_log_1d(const std::function<double(double)>& f, double lo, double hi, int points = 41,
                          double xtol = 1e-9);

/// Weak-drive, weak-hopping limit of the 2+2 outer pair: steady concurrence
/// of the effective model, which depends only on J12/Omega and eta.
double effective_concurrence(double j12_over_omega, double eta2);

/// Optimized concurrences per eta^2. Columns:
///   eta2, c11_sym, omega_11_sym, c11, omega_a_11, omega_b_11,
///   c22, omega_a_22, omega_b_22, j12_22, c22_sym, omega_22_sym, j12_22_sym,
///   c_eff, j12_ratio_eff, c22_minus_c11
/// All rates in units of gamma.
ResultTable performance_scan(const std::vector<double>& eta2, const FigureOptions& options = {});

struct CouplingThreshold {
  double gamma_mhz = 0.0;    ///< minimal gamma / 2 pi
  double omega_mhz = 0.0;    ///< best drive / 2 pi at that coupling
  double decay_time_ns = 0.0;///< 1 / gamma
  double concurrence = 0.0;
};

/// Smallest waveguide coupling for which some symmetric drive reaches
/// `target` concurrence in the 1+1 system with intrinsic T1 (microseconds).
CouplingThreshold minimal_coupling_for_concurrence(double target, double t1_us, double eta2);

}  // namespace wqed
