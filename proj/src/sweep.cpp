#include "wqed/sweep.hpp"

#include "wqed/entanglement.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace wqed {

namespace {

// Index of the hopping addressed by "jXY" with Y = X + 1, if the name has that form.
std::optional<std::size_t> hopping_index(const std::string& name) {
  if (name.size() != 3 || name[0] != 'j') return std::nullopt;
  if (!std::isdigit(static_cast<unsigned char>(name[1])) || !std::isdigit(static_cast<unsigned char>(name[2]))) {
    return std::nullopt;
  }
  const int a = name[1] - '0';
  const int b = name[2] - '0';
  if (a < 1 || b != a + 1) return std::nullopt;
  return static_cast<std::size_t>(a - 1);
}

std::vector<double>& checked_hopping(ChainSpec& spec, std::size_t index, const std::string& name) {
  if (index >= spec.hopping.size()) {
    throw std::invalid_argument(name + " requires a chain of at least " + std::to_string(index + 2) + " sites");
  }
  return spec.hopping;
}

}  // namespace

bool is_parameter(const std::string& name) {
  static const char* const names[] = {"omega", "omega_a", "omega_b", "gamma", "eta",
                                      "eta2",  "delta",   "t1",      "j",     "j12_ratio"};
  return std::find(std::begin(names), std::end(names), name) != std::end(names) || hopping_index(name).has_value();
}

void apply_parameter(ChainSpec& spec, const std::string& name, double value) {
  if (name == "omega") {
    spec.set_omega(value);
  } else if (name == "omega_a") {
    spec.omega_a = value;
  } else if (name == "omega_b") {
    spec.omega_b = value;
  } else if (name == "gamma") {
    spec.gamma = value;
  } else if (name == "eta") {
    spec.eta = value;
  } else if (name == "eta2") {
    spec.set_eta2(value);
  } else if (name == "delta") {
    spec.delta = value;
  } else if (name == "t1") {
    spec.t1 = value;
  } else if (name == "j") {
    std::fill(spec.hopping.begin(), spec.hopping.end(), value);
  } else if (name == "j12_ratio") {
    checked_hopping(spec, 0, name)[0] = value * spec.omega_a;
  } else if (const auto idx = hopping_index(name)) {
    checked_hopping(spec, *idx, name)[*idx] = value;
  } else {
    throw std::invalid_argument("unknown parameter " + name);
  }
}

double read_parameter(const ChainSpec& spec, const std::string& name) {
  if (name == "omega" || name == "omega_a") return spec.omega_a;
  if (name == "omega_b") return spec.omega_b;
  if (name == "gamma") return spec.gamma;
  if (name == "eta") return spec.eta;
  if (name == "eta2") return spec.eta2();
  if (name == "delta") return spec.delta;
  if (name == "t1") return spec.t1.value_or(std::numeric_limits<double>::infinity());
  ChainSpec copy = spec;
  if (name == "j") return checked_hopping(copy, 0, name)[0];
  if (name == "j12_ratio") return checked_hopping(copy, 0, name)[0] / spec.omega_a;
  if (const auto idx = hopping_index(name)) return checked_hopping(copy, *idx, name)[*idx];
  throw std::invalid_argument("unknown parameter " + name);
}

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::Concurrence: return "concurrence";
    case Metric::OuterPairConcurrence: return "outer_pair_concurrence";
    case Metric::Purity: return "purity";
    case Metric::Gap: return "gap";
    case Metric::Fidelity: return "fidelity";
  }
  throw std::logic_error("metric_name: bad metric");
}

Metric parse_metric(const std::string& name) {
  for (Metric m : {Metric::Concurrence, Metric::OuterPairConcurrence, Metric::Purity, Metric::Gap, Metric::Fidelity}) {
    if (metric_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown metric " + name);
}

std::vector<double> evaluate_metrics(const ChainSpec& spec, const std::vector<Metric>& metrics,
                                     const SolverOptions& solver) {
  const LindbladModel model = build_model(spec);
  const SteadyState ss = steady_state(model, solver);
  std::vector<double> out;
  out.reserve(metrics.size());
  for (Metric m : metrics) {
    switch (m) {
      case Metric::Concurrence: out.push_back(pair_concurrence(ss.rho, 1)); break;
      case Metric::OuterPairConcurrence: out.push_back(outer_pair_concurrence(ss.rho, spec)); break;
      case Metric::Purity: out.push_back(purity(ss.rho)); break;
      case Metric::Gap: out.push_back(spectral_gap(model, solver.max_dim)); break;
      case Metric::Fidelity:
        out.push_back(bell_fidelity(pair_state(ss.rho, spec.n), spec.n % 2 ? Bell::Singlet : Bell::Triplet));
        break;
    }
  }
  return out;
}

SweepAxis SweepAxis::linear(std::string name, double lo, double hi, int points) {
  if (points < 1) throw std::invalid_argument("axis " + name + ": needs at least one point");
  SweepAxis axis{std::move(name), {}};
  for (int k = 0; k < points; ++k) axis.values.push_back(points == 1 ? lo : lo + (hi - lo) * k / (points - 1));
  return axis;
}

SweepAxis SweepAxis::log(std::string name, double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > 0.0)) throw std::invalid_argument("axis " + name + ": log grid needs positive bounds");
  SweepAxis axis = linear(std::move(name), std::log(lo), std::log(hi), points);
  for (double& v : axis.values) v = std::exp(v);
  axis.values.front() = lo;
  axis.values.back() = points == 1 ? lo : hi;
  return axis;
}

SolverOptions fast_solver_options() {
  SolverOptions o;
  o.uniqueness = UniquenessCheck::ConditionEstimate;
  return o;
}

void SweepSpec::validate() const {
  base.validate();
  if (axes.empty() || axes.size() > 2) throw std::invalid_argument("sweep needs one or two axes");
  if (metrics.empty()) throw std::invalid_argument("sweep needs at least one metric");
  std::size_t total = 1;
  for (const auto& axis : axes) {
    if (!is_parameter(axis.name)) throw std::invalid_argument("axis " + axis.name + ": unknown parameter");
    if (axis.values.empty()) throw std::invalid_argument("axis " + axis.name + ": empty grid");
    const bool up = std::is_sorted(axis.values.begin(), axis.values.end(), std::less<>());
    const bool down = std::is_sorted(axis.values.begin(), axis.values.end(), std::greater<>());
    if (!up && !down) throw std::invalid_argument("axis " + axis.name + ": grid is not monotone");
    total *= axis.values.size();
  }
  if (axes.size() == 2 && axes[0].name == axes[1].name) throw std::invalid_argument("axes must differ");
  if (total > budget) {
    throw std::invalid_argument("sweep grid has " + std::to_string(total) + " points, budget is " +
                                std::to_string(budget));
  }
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ResultTable sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<std::string> names;
  for (const auto& axis : spec.axes) names.push_back(axis.name);
  for (Metric m : spec.metrics) names.push_back(metric_name(m));

  const std::size_t n0 = spec.axes[0].values.size();
  const std::size_t n1 = spec.axes.size() == 2 ? spec.axes[1].values.size() : 1;
  const std::size_t total = n0 * n1;

  // j12_ratio after the drive axes
  std::vector<std::size_t> order(spec.axes.size());
  for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
  std::stable_partition(order.begin(), order.end(), [&](std::size_t a) { return spec.axes[a].name != "j12_ratio"; });

  struct Row {
    std::vector<double> values;
    std::string error;
  };
  std::vector<Row> rows(total);
  parallel_for(total, spec.threads, [&](std::size_t i) {
    const std::size_t idx[2] = {i / n1, i % n1};
    Row& row = rows[i];
    ChainSpec point = spec.base;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) row.values.push_back(spec.axes[a].values[idx[a]]);
    try {
      for (std::size_t a : order) apply_parameter(point, spec.axes[a].name, spec.axes[a].values[idx[a]]);
      const std::vector<double> m = evaluate_metrics(point, spec.metrics, spec.solver);
      row.values.insert(row.values.end(), m.begin(), m.end());
    } catch (const std::exception& e) {
      std::ostringstream tag;
      tag << "grid point (";
      for (std::size_t a = 0; a < spec.axes.size(); ++a) {
        tag << (a ? ", " : "") << spec.axes[a].name << "=" << format_number(spec.axes[a].values[idx[a]]);
      }
      tag << "): " << e.what();
      row.error = tag.str();
      row.values.resize(spec.axes.size());
      row.values.resize(spec.axes.size() + spec.metrics.size(), std::numeric_limits<double>::quiet_NaN());
    }
  });

  ResultTable table(names);
  for (auto& row : rows) table.append_row(row.values, std::move(row.error));
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& axis : spec.axes) axes.push_back({{"name", axis.name}, {"values", axis.values}});
  table.metadata() = {{"kind", "sweep"}, {"spec", spec.base}, {"axes", axes}, {"solver", spec.solver}};
  table.metadata().update(provenance());
  return table;
}

}  // namespace wqed
