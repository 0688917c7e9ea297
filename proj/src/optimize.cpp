#include "wqed/optimize.hpp"

#include "wqed/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wqed {

namespace {

using Point = std::vector<double>;

struct Evaluator {
  const OptimizeSpec& spec;
  std::vector<double> lo, hi;  // log bounds
  ResultTable& log;
  std::size_t count = 0;

  Point clip(Point x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    return x;
  }

  ChainSpec spec_at(const Point& x) const {
    ChainSpec s = spec.base;
    for (std::size_t i = 0; i < x.size(); ++i) apply_parameter(s, spec.free[i].name, std::exp(x[i]));
    return s;
  }

  // objective or -inf on failure; no bookkeeping, safe to call concurrently
  double raw(const Point& x) const {
    try {
      const double v = objective_value(spec_at(x), spec.objective, spec.solver);
      return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
    } catch (const std::exception&) {
      return -std::numeric_limits<double>::infinity();
    }
  }

  void record(int stage, const Point& x, double value) {
    std::vector<double> row{static_cast<double>(stage)};
    for (double xi : x) row.push_back(std::exp(xi));
    row.push_back(std::isfinite(value) ? value : std::numeric_limits<double>::quiet_NaN());
    log.append_row(row, std::isfinite(value) ? "" : "evaluation failed");
    ++count;
  }

  double operator()(const Point& x) {
    const double v = raw(x);
    record(1, x, v);
    return v;
  }
};

struct Vertex {
  Point x;
  double f;  // objective, maximized
};

}  // namespace

double objective_value(const ChainSpec& spec, Objective objective, const SolverOptions& solver) {
  const SteadyState ss = steady_state(build_model(spec), solver);
  return objective == Objective::PairConcurrence ? pair_concurrence(ss.rho, 1) : outer_pair_concurrence(ss.rho, spec);
}

void OptimizeSpec::validate() const {
  base.validate();
  if (free.empty()) throw std::invalid_argument("optimize needs at least one free parameter");
  for (const auto& p : free) {
    if (!is_parameter(p.name)) throw std::invalid_argument("free parameter " + p.name + ": unknown");
    if (!(p.lower > 0.0) || !(p.upper > p.lower) || !std::isfinite(p.upper)) {
      throw std::invalid_argument("free parameter " + p.name + ": bounds must be positive, finite and increasing");
    }
  }
  if (objective == Objective::OuterPairConcurrence && base.n < 2) {
    throw std::invalid_argument("outer-pair objective needs n >= 2");
  }
  if (grid_points < 2) throw std::invalid_argument("grid_points must be at least 2");
  const double seed = std::pow(static_cast<double>(grid_points), static_cast<double>(free.size()));
  if (seed > static_cast<double>(max_evaluations)) {
    throw std::invalid_argument("seed grid exceeds the evaluation budget");
  }
}

OptimizeResult optimize(const OptimizeSpec& spec) {
  spec.validate();
  const std::size_t dim = spec.free.size();
  std::vector<std::string> names{"stage"};
  for (const auto& p : spec.free) names.push_back(p.name);
  names.push_back("objective");

  OptimizeResult result;
  result.iterates = ResultTable(names);
  Evaluator eval{spec, {}, {}, result.iterates};
  for (const auto& p : spec.free) {
    eval.lo.push_back(std::log(p.lower));
    eval.hi.push_back(std::log(p.upper));
  }

  // seed grid
  const std::size_t g = static_cast<std::size_t>(spec.grid_points);
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= g;
  std::vector<Point> grid(total, Point(dim));
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rem = k;
    for (std::size_t i = dim; i-- > 0;) {
      const std::size_t idx = rem % g;
      rem /= g;
      grid[k][i] = eval.lo[i] + (eval.hi[i] - eval.lo[i]) * static_cast<double>(idx) / static_cast<double>(g - 1);
    }
  }
  std::vector<double> values(total);
  parallel_for(total, spec.threads, [&](std::size_t k) { values[k] = eval.raw(grid[k]); });
  for (std::size_t k = 0; k < total; ++k) eval.record(0, grid[k], values[k]);
  const std::size_t best_seed = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  if (!std::isfinite(values[best_seed])) throw SolverError("optimize: every seed point failed");
  result.seed_value = values[best_seed];

  Vertex best{grid[best_seed], values[best_seed]};
  std::vector<double> step(dim);
  for (std::size_t i = 0; i < dim; ++i) step[i] = 0.5 * (eval.hi[i] - eval.lo[i]) / static_cast<double>(g - 1);

  auto budget_left = [&] { return eval.count < spec.max_evaluations; };

  for (int round = 0; round <= spec.restarts && budget_left(); ++round) {
    const double start_value = best.f;
    std::vector<Vertex> simplex{best};
    for (std::size_t i = 0; i < dim && budget_left(); ++i) {
      Point x = best.x;
      x[i] += (x[i] + step[i] <= eval.hi[i]) ? step[i] : -step[i];
      x = eval.clip(x);
      simplex.push_back({x, eval(x)});
    }
    if (simplex.size() != dim + 1) break;

    while (budget_left()) {
      std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
      double diameter = 0.0;
      for (const auto& v : simplex) {
        for (std::size_t i = 0; i < dim; ++i) diameter = std::max(diameter, std::abs(v.x[i] - simplex[0].x[i]));
      }
      const double spread = simplex.front().f - simplex.back().f;
      if (diameter <= spec.xtol && (spread <= spec.ftol || !std::isfinite(spread))) break;
      if (diameter <= spec.xtol * 1e-3) break;

      Point centroid(dim, 0.0);
      for (std::size_t v = 0; v < dim; ++v)
        for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(dim);
      auto along = [&](double t) {
        Point x(dim);
        for (std::size_t i = 0; i < dim; ++i) x[i] = centroid[i] + t * (simplex.back().x[i] - centroid[i]);
        return eval.clip(x);
      };

      const Point xr = along(-1.0);
      const double fr = eval(xr);
      if (fr > simplex.front().f) {
        if (!budget_left()) {
          simplex.back() = {xr, fr};
          break;
        }
        const Point xe = along(-2.0);
        const double fe = eval(xe);
        simplex.back() = fe > fr ? Vertex{xe, fe} : Vertex{xr, fr};
      } else if (fr > simplex[dim - 1].f) {
        simplex.back() = {xr, fr};
      } else {
        if (!budget_left()) break;
        const bool outside = fr > simplex.back().f;
        const Point xc = along(outside ? -0.5 : 0.5);
        const double fc = eval(xc);
        if (fc > std::max(fr, simplex.back().f) || (!outside && fc > simplex.back().f)) {
          simplex.back() = {xc, fc};
        } else {
          for (std::size_t v = 1; v <= dim && budget_left(); ++v) {
            Point x(dim);
            for (std::size_t i = 0; i < dim; ++i) x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
            simplex[v] = {x, eval(x)};
          }
        }
      }
    }
    for (const auto& v : simplex) {
      if (v.f > best.f) best = v;
    }
    if (round > 0 && best.f - start_value <= spec.ftol) break;
  }

  result.evaluations = eval.count;
  result.budget_exhausted = !budget_left();
  result.best_spec = eval.spec_at(best.x);
  for (double xi : best.x) result.best_parameters.push_back(std::exp(xi));
  SolverOptions verify = spec.solver;
  verify.uniqueness = UniquenessCheck::SingularValues;
  result.best_value = objective_value(result.best_spec, spec.objective, verify);

  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& p : spec.free) bounds.push_back({{"name", p.name}, {"lower", p.lower}, {"upper", p.upper}});
  result.iterates.metadata() = {{"kind", "optimize"},
                                {"spec", spec.base},
                                {"free", bounds},
                                {"objective", spec.objective == Objective::PairConcurrence ? "pair" : "outer_pair"},
                                {"grid_points", spec.grid_points},
                                {"max_evaluations", spec.max_evaluations},
                                {"solver", spec.solver},
                                {"best_value", result.best_value},
                                {"budget_exhausted", result.budget_exhausted}};
  result.iterates.metadata().update(provenance());
  return result;
}

}  // namespace wqed
