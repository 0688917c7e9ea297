// config.hpp: flat key = value run configuration for the command-line tool

#pragma once

#include "wqed/model.hpp"
#include "wqed/optimize.hpp"
#include "wqed/sweep.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wqed {

/// Invalid configuration; the message names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Values as the user wrote them. Rates are in units of gamma unless t1_us is
/// set, in which case gamma, omega_a, omega_b, delta and j are frequencies
/// in MHz (omega / 2 pi) and times are in microseconds.
struct RunConfig {
  int n = 1;
  double gamma = 1.0;
  double eta2 = 1.0;
  double omega_a = 0.0;
  double omega_b = 0.0;
  double delta = 0.0;
  std::vector<double> j;
  std::optional<double> t1_us;

  double tol = 1e-10;
  std::size_t budget = 250'000;
  int threads = 0;

  std::string format = "csv";  ///< csv | json
  std::string plot = "svg";    ///< none | svg
  std::string out_dir = ".";

  std::vector<std::string> axes;     ///< name:lo:hi:points[:log|lin]
  std::vector<std::string> metrics{"concurrence"};
  std::vector<std::string> free;     ///< name:lo:hi
  std::string objective = "pair";    ///< pair | outer_pair
  double t_max = 100.0;
  int points = 101;
  int resolution = 0;
  int grid_points = 9;
  std::size_t max_evaluations = 4000;

  bool absolute_units() const { return t1_us.has_value(); }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Keys accepted in files and, with '_' spelled '-', as --flags.
const std::vector<std::string>& config_keys();

/// Throws ConfigError for unknown keys or malformed values.
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Every key, one per line; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& config);

/// Multiplier taking a user-facing value of `parameter` to internal units.
double unit_scale(const RunConfig& config, const std::string& parameter);

/// Chain spec in internal units; throws ConfigError naming the key on invalid input.
ChainSpec chain_spec(const RunConfig& config);
SolverOptions solver_options(const RunConfig& config);
/// Axes and free parameters in internal units.
std::vector<SweepAxis> sweep_axes(const RunConfig& config);
std::vector<Metric> sweep_metrics(const RunConfig& config);
std::vector<FreeParameter> free_parameters(const RunConfig& config);
Objective objective(const RunConfig& config);

}  // namespace wqed
