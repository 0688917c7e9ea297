#include "wqed/figures.hpp"

#include "wqed/analytic.hpp"
#include "wqed/entanglement.hpp"
#include "wqed/lindblad.hpp"
#include "wqed/optimize.hpp"
#include "wqed/plot.hpp"
#include "wqed/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wqed {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<double> kLossCurves{1.0, 0.99, 0.95, 0.9, 0.8};
const std::vector<double> kScanEta2{0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};

int resolution(const FigureOptions& o, int fallback) { return o.resolution > 0 ? o.resolution : fallback; }

std::string label(const char* prefix, double v) {
  std::ostringstream s;
  s << prefix << v;
  return s.str();
}

ChainSpec pair_spec(double eta2, double omega) {
  ChainSpec spec;
  spec.set_eta2(eta2);
  spec.set_omega(omega);
  return spec;
}

ChainSpec two_pair_spec(double eta2) {
  ChainSpec spec = pair_spec(eta2, 1.0);
  spec.n = 2;
  spec.hopping = {1.0};
  return spec;
}

OptimizeResult run_optimizer(ChainSpec base, std::vector<FreeParameter> free, Objective objective,
                             const FigureOptions& o) {
  OptimizeSpec s;
  s.base = std::move(base);
  s.free = std::move(free);
  s.objective = objective;
  s.grid_points = o.grid_points;
  s.max_evaluations = o.max_evaluations;
  s.threads = o.threads;
  return optimize(s);
}

// fig1c sweep, reused by fig1d for the argmax points
ResultTable loss_curves(const FigureOptions& o, std::vector<std::pair<double, double>>& argmax) {
  ResultTable table({"eta2", "omega", "concurrence"});
  const auto axis = SweepAxis::log("omega", 1e-2, 1e2, resolution(o, 81));
  argmax.clear();
  for (double eta2 : kLossCurves) {
    SweepSpec s;
    s.base = pair_spec(eta2, 1.0);
    s.axes = {axis};
    s.threads = o.threads;
    const ResultTable t = sweep(s);
    const auto& c = t.column("concurrence");
    std::size_t best = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      table.append_row({eta2, axis.values[i], c[i]}, t.error(i));
      if (c[i] > c[best]) best = i;
    }
    argmax.emplace_back(eta2, axis.values[best]);
  }
  return table;
}

LinePlot curves_by(const ResultTable& t, const std::string& key, const std::string& x, const std::string& y,
                   const char* prefix) {
  LinePlot plot;
  std::map<double, Series, std::greater<>> by;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    Series& s = by[t.at(r, key)];
    s.label = label(prefix, t.at(r, key));
    s.x.push_back(t.at(r, x));
    s.y.push_back(t.at(r, y));
  }
  for (auto& [k, s] : by) plot.series.push_back(std::move(s));
  return plot;
}

FigureResult fig1c(const FigureOptions& o) {
  std::vector<std::pair<double, double>> argmax;
  FigureResult out{"fig1c", loss_curves(o, argmax), {}};
  nlohmann::json peaks = nlohmann::json::array();
  LinePlot plot = curves_by(out.table, "eta2", "omega", "concurrence", "eta^2 = ");
  for (const auto& [eta2, omega] : argmax) {
    if (eta2 < 1.0) peaks.push_back({{"eta2", eta2}, {"omega", omega}});
  }
  out.table.metadata() = {{"figure", "fig1c"}, {"argmax", peaks}, {"system", "1+1, symmetric drive, delta = 0"}};
  plot.title = "Steady-state concurrence, 1+1";
  plot.xlabel = "Omega / gamma";
  plot.ylabel = "C";
  plot.logx = true;
  plot.ylim = {{0.0, 1.0}};
  out.svg = render_svg(plot);
  return out;
}

FigureResult fig1d(const FigureOptions& o) {
  std::vector<std::pair<double, double>> argmax;
  loss_curves(o, argmax);
  FigureResult out{"fig1d", ResultTable({"eta2", "omega", "t", "concurrence", "loss_time"}), {}};
  const auto times = SweepAxis::log("t", 1e-2, 1e4, resolution(o, 81)).values;
  std::vector<double> grid{0.0};
  grid.insert(grid.end(), times.begin(), times.end());
  LinePlot plot;
  for (const auto& [eta2, omega] : argmax) {
    if (eta2 >= 1.0) continue;
    const LindbladModel model = build_model(pair_spec(eta2, omega));
    const DensityMatrix vacuum = basis_state(model.layout, {0, 0}).density();
    const EvolutionTrace trace = evolve(model, vacuum, grid);
    const double loss_time = 1.0 / (1.0 - eta2);
    Series s{label("eta^2 = ", eta2), {}, {}};
    for (std::size_t k = 1; k < grid.size(); ++k) {
      const double c = concurrence(trace.states[k]);
      out.table.append_row({eta2, omega, grid[k], c, loss_time});
      s.x.push_back(grid[k]);
      s.y.push_back(c);
    }
    plot.series.push_back(std::move(s));
    plot.markers.emplace_back(loss_time, label("1/g_loss, eta^2 = ", eta2));
  }
  out.table.metadata() = {{"figure", "fig1d"}, {"initial_state", "vacuum"}, {"loss_time", "1 / (gamma (1 - eta2))"}};
  plot.title = "Concurrence vs time at the optimal drive";
  plot.xlabel = "gamma t";
  plot.ylabel = "C";
  plot.logx = true;
  plot.ylim = {{0.0, 1.0}};
  out.svg = render_svg(plot);
  return out;
}

FigureResult fig2a(const FigureOptions& o) {
  const int n = resolution(o, 31);
  const auto c1 = run_optimizer(pair_spec(0.9, 1.0), {{"omega", 1e-2, 1e2}}, Objective::PairConcurrence, o);
  SweepSpec s;
  s.base = two_pair_spec(0.9);
  s.axes = {SweepAxis::log("omega", 1e-3, 10.0, n), SweepAxis::log("j12_ratio", 1e-2, 1e2, n)};
  s.metrics = {Metric::OuterPairConcurrence};
  s.threads = o.threads;
  FigureResult out{"fig2a", sweep(s), {}};

  Heatmap map;
  map.x = s.axes[0].values;
  map.y = s.axes[1].values;
  map.z.assign(map.y.size(), std::vector<double>(map.x.size(), kNaN));
  double best = 0.0;
  std::size_t above = 0;
  for (std::size_t r = 0; r < out.table.rows(); ++r) {
    const double c = out.table.at(r, "outer_pair_concurrence");
    map.z[r % map.y.size()][r / map.y.size()] = c;
    if (std::isfinite(c)) {
      best = std::max(best, c);
      if (c > c1.best_value) ++above;
    }
  }
  map.center = c1.best_value;
  map.contours = {c1.best_value};
  map.logx = map.logy = true;
  map.title = "Outer-pair concurrence, 2+2, eta^2 = 0.9";
  map.xlabel = "Omega / gamma";
  map.ylabel = "J12 / Omega";
  out.svg = render_svg(map);
  auto& meta = out.table.metadata();
  meta["figure"] = "fig2a";
  meta["c1_max"] = c1.best_value;
  meta["c1_argmax_omega"] = c1.best_parameters[0];
  meta["grid_max"] = best;
  meta["points_above_c1_max"] = above;
  return out;
}

FigureResult fig2b(const FigureOptions& o) {
  const std::vector<double> eta2 = o.eta2.empty() ? kScanEta2 : o.eta2;
  FigureOptions sub = o;
  const ResultTable scan = performance_scan(eta2, sub);
  FigureResult out{"fig2b", ResultTable({"eta2", "c11_sym", "c_eff", "c22_sym"}), {}};
  for (std::size_t r = 0; r < scan.rows(); ++r) {
    out.table.append_row({scan.at(r, "eta2"), scan.at(r, "c11_sym"), scan.at(r, "c_eff"), scan.at(r, "c22_sym")});
  }
  out.table.metadata() = scan.metadata();
  out.table.metadata()["figure"] = "fig2b";
  LinePlot plot;
  plot.series = {{"1+1, optimal Omega", eta2, out.table.column("c11_sym"), false},
                 {"2+2, weak-drive limit, optimal J12/Omega", eta2, out.table.column("c_eff"), false},
                 {"2+2, optimal Omega and J12", eta2, out.table.column("c22_sym"), true}};
  plot.title = "Maximum concurrence, symmetric drive";
  plot.xlabel = "eta^2";
  plot.ylabel = "C max";
  plot.ylim = {{0.0, 1.0}};
  out.svg = render_svg(plot);
  return out;
}

FigureResult fig3(const std::string& id, const FigureOptions& o) {
  const std::vector<double> eta2 = o.eta2.empty() ? kScanEta2 : o.eta2;
  FigureResult out{id, performance_scan(eta2, o), {}};
  out.table.metadata()["figure"] = id;
  const ResultTable& t = out.table;
  if (id == "fig3a") {
    LinePlot main;
    main.series = {{"1+1, optimal Omega_A, Omega_B", eta2, t.column("c11"), false},
                   {"2+2, optimal Omega_A, Omega_B, J12", eta2, t.column("c22"), false},
                   {"2+2, Omega_A = Omega_B", eta2, t.column("c22_sym"), true}};
    main.title = "Optimized concurrence";
    main.xlabel = "eta^2";
    main.ylabel = "C";
    main.ylim = {{0.0, 1.0}};
    LinePlot inset;
    inset.series = {{"C(2+2) - C(1+1)", eta2, t.column("c22_minus_c11"), false}};
    inset.title = "Improvement of 2+2 over 1+1";
    inset.xlabel = "eta^2";
    inset.ylabel = "delta C";
    out.svg = side_by_side({render_svg(main), render_svg(inset)});
  } else {
    LinePlot plot;
    plot.series = {{"Omega_A (1+1)", eta2, t.column("omega_a_11"), false},
                   {"Omega_B (1+1)", eta2, t.column("omega_b_11"), false},
                   {"Omega_A (2+2)", eta2, t.column("omega_a_22"), true},
                   {"Omega_B (2+2)", eta2, t.column("omega_b_22"), true},
                   {"J12 (2+2)", eta2, t.column("j12_22"), true}};
    plot.title = "Optimal parameters";
    plot.xlabel = "eta^2";
    plot.ylabel = "rate / gamma";
    plot.logy = true;
    out.svg = render_svg(plot);
  }
  return out;
}

FigureResult figB1(const FigureOptions& o) {
  const int n = resolution(o, 31);
  const double t1_us = 100.0, eta2 = 0.9, two_pi = 2 * std::numbers::pi;
  const auto g = SweepAxis::log("gamma", 0.1, 10.0, n).values;
  const auto w = SweepAxis::log("omega", 0.1, 10.0, n).values;
  FigureResult out{"figB1", ResultTable({"gamma_mhz", "omega_mhz", "c_t1", "c_ideal"}), {}};
  std::vector<std::vector<double>> values(g.size() * w.size());
  parallel_for(values.size(), o.threads, [&](std::size_t k) {
    ChainSpec spec = pair_spec(eta2, two_pi * w[k % w.size()]);
    spec.gamma = two_pi * g[k / w.size()];
    std::vector<double> c;
    for (bool lossy : {true, false}) {
      spec.t1.reset();
      if (lossy) spec.t1 = t1_us;
      try {
        c.push_back(pair_concurrence(steady_state(build_model(spec), fast_solver_options()).rho, 1));
      } catch (const std::exception&) {
        c.push_back(kNaN);
      }
    }
    values[k] = c;
  });
  Heatmap lossy, ideal;
  for (Heatmap* m : {&lossy, &ideal}) {
    m->x = g;
    m->y = w;
    m->z.assign(w.size(), std::vector<double>(g.size(), kNaN));
    m->logx = m->logy = true;
    m->center = 0.56;
    m->contours = {0.56};
    m->xlabel = "gamma / 2 pi (MHz)";
    m->ylabel = "Omega / 2 pi (MHz)";
  }
  lossy.title = "T1 = 100 us, eta^2 = 0.9";
  ideal.title = "no intrinsic relaxation, eta^2 = 0.9";
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::size_t i = k / w.size(), j = k % w.size();
    out.table.append_row({g[i], w[j], values[k][0], values[k][1]});
    lossy.z[j][i] = values[k][0];
    ideal.z[j][i] = values[k][1];
  }
  const CouplingThreshold th = minimal_coupling_for_concurrence(0.56, t1_us, eta2);
  out.table.metadata() = {{"figure", "figB1"},
                          {"t1_us", t1_us},
                          {"eta2", eta2},
                          {"units", "rates are 2 pi x MHz; times in microseconds"},
                          {"threshold", {{"concurrence", 0.56},
                                         {"gamma_mhz", th.gamma_mhz},
                                         {"omega_mhz", th.omega_mhz},
                                         {"decay_time_ns", th.decay_time_ns}}}};
  out.svg = side_by_side({render_svg(lossy), render_svg(ideal)});
  return out;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig1c", "fig1d", "fig2a", "fig2b", "fig3a", "fig3b", "figB1"};
  return ids;
}

Maximum1D maximize_log_1d(const std::function<double(double)>& f, double lo, double hi, int points, double xtol) {
  if (!(lo > 0.0) || !(hi > lo) || points < 3) throw std::invalid_argument("maximize_log_1d: bad bracket");
  auto g = [&](double u) {
    const double v = f(std::exp(u));
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  };
  const double a = std::log(lo), b = std::log(hi), h = (b - a) / (points - 1);
  int best = 0;
  double fbest = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < points; ++k) {
    const double v = g(a + h * k);
    if (v > fbest) {
      fbest = v;
      best = k;
    }
  }
  double l = a + h * std::max(best - 1, 0), r = a + h * std::min(best + 1, points - 1);
  Maximum1D out{std::exp(a + h * best), fbest};
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double x1 = r - phi * (r - l), x2 = l + phi * (r - l);
  double f1 = g(x1), f2 = g(x2);
  while (r - l > xtol) {
    if (f1 >= f2) {
      r = x2;
      x2 = x1;
      f2 = f1;
      x1 = r - phi * (r - l);
      f1 = g(x1);
    } else {
      l = x1;
      x1 = x2;
      f1 = f2;
      x2 = l + phi * (r - l);
      f2 = g(x2);
    }
  }
  for (auto [x, v] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (v > out.value) out = {std::exp(x), v};
  }
  return out;
}

double effective_concurrence(double j12_over_omega, double eta2) {
  const double omega = 1e-3;
  const EffectiveModel m = effective_model(omega, 1.0, j12_over_omega * omega, std::sqrt(eta2));
  return concurrence(steady_state(m.model).rho);
}

ResultTable performance_scan(const std::vector<double>& eta2, const FigureOptions& o) {
  ResultTable t({"eta2", "c11_sym", "omega_11_sym", "c11", "omega_a_11", "omega_b_11", "c22", "omega_a_22",
                 "omega_b_22", "j12_22", "c22_sym", "omega_22_sym", "j12_22_sym", "c_eff", "j12_ratio_eff",
                 "c22_minus_c11"});
  for (double e : eta2) {
    if (!(e > 0.0 && e <= 1.0)) throw std::invalid_argument("eta2 grid: values must lie in (0, 1]");
    const auto sym11 = run_optimizer(pair_spec(e, 1.0), {{"omega", 1e-3, 1e2}}, Objective::PairConcurrence, o);
    const auto opt11 = run_optimizer(pair_spec(e, 1.0), {{"omega_a", 1e-3, 1e2}, {"omega_b", 1e-3, 1e2}},
                                     Objective::PairConcurrence, o);
    const auto opt22 = run_optimizer(two_pair_spec(e), {{"omega_a", 1e-4, 10.0}, {"omega_b", 1e-4, 10.0}, {"j12", 1e-4, 10.0}},
                                     Objective::OuterPairConcurrence, o);
    const auto sym22 =
        run_optimizer(two_pair_spec(e), {{"omega", 1e-4, 10.0}, {"j12", 1e-4, 10.0}}, Objective::OuterPairConcurrence, o);
    const auto eff = maximize_log_1d([e](double r) { return effective_concurrence(r, e); }, 1e-2, 1e2);
    t.append_row({e, sym11.best_value, sym11.best_parameters[0], opt11.best_value, opt11.best_parameters[0],
                  opt11.best_parameters[1], opt22.best_value, opt22.best_parameters[0], opt22.best_parameters[1],
                  opt22.best_parameters[2], sym22.best_value, sym22.best_parameters[0], sym22.best_parameters[1],
                  eff.value, eff.x, opt22.best_value - opt11.best_value},
                 opt11.budget_exhausted || opt22.budget_exhausted ? "optimizer budget exhausted" : "");
  }
  t.metadata() = {{"kind", "performance_scan"},
                  {"units", "rates in units of gamma"},
                  {"grid_points", o.grid_points},
                  {"max_evaluations", o.max_evaluations},
                  {"bounds", {{"1+1", {1e-3, 1e2}}, {"2+2", {1e-4, 10.0}}, {"j12_ratio_eff", {1e-2, 1e2}}}}};
  t.metadata().update(provenance());
  return t;
}

CouplingThreshold minimal_coupling_for_concurrence(double target, double t1_us, double eta2) {
  if (!(t1_us > 0.0)) throw std::invalid_argument("t1_us must be positive");
  const double two_pi = 2 * std::numbers::pi;
  auto best_at = [&](double gamma_mhz) {
    return maximize_log_1d(
        [&](double ratio) {
          ChainSpec spec = pair_spec(eta2, two_pi * gamma_mhz * ratio);
          spec.gamma = two_pi * gamma_mhz;
          spec.t1 = t1_us;
          return pair_concurrence(steady_state(build_model(spec), fast_solver_options()).rho, 1);
        },
        0.1, 10.0, 21, 1e-7);
  };
  double lo = 1e-3, hi = 1e3;
  if (best_at(hi).value < target) throw SolverError("target concurrence unreachable for gamma / 2 pi <= 1 GHz");
  if (best_at(lo).value >= target) return {lo, lo * best_at(lo).x, 1e3 / (two_pi * lo), best_at(lo).value};
  while (hi / lo > 1 + 1e-6) {
    const double mid = std::sqrt(lo * hi);
    (best_at(mid).value >= target ? hi : lo) = mid;
  }
  const Maximum1D m = best_at(hi);
  return {hi, hi * m.x, 1e3 / (two_pi * hi), m.value};
}

FigureResult reproduce_figure(const std::string& id, const FigureOptions& options) {
  if (options.resolution < 0 || (options.resolution > 0 && options.resolution < 2)) {
    throw std::invalid_argument("resolution must be at least 2");
  }
  FigureResult out;
  if (id == "fig1c") {
    out = fig1c(options);
  } else if (id == "fig1d") {
    out = fig1d(options);
  } else if (id == "fig2a") {
    out = fig2a(options);
  } else if (id == "fig2b") {
    out = fig2b(options);
  } else if (id == "fig3a" || id == "fig3b") {
    out = fig3(id, options);
  } else if (id == "figB1") {
    out = figB1(options);
  } else {
    throw std::invalid_argument("unknown figure " + id);
  }
  out.table.metadata().update(provenance());
  return out;
}

}  // namespace wqed
