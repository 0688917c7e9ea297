#include "wqed/cli.hpp"

#include "wqed/analytic.hpp"
#include "wqed/config.hpp"
#include "wqed/entanglement.hpp"
#include "wqed/figures.hpp"
#include "wqed/lindblad.hpp"
#include "wqed/optimize.hpp"
#include "wqed/plot.hpp"
#include "wqed/sweep.hpp"
#include "wqed/table.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>

namespace wqed {

namespace {

namespace fs = std::filesystem;

struct Context {
  RunConfig config;
  std::ostream& out;
};

std::string flag_name(const std::string& key) {
  std::string f = key;
  std::replace(f.begin(), f.end(), '_', '-');
  return "--" + f;
}

fs::path artifact(const RunConfig& c, const std::string& name) { return fs::path(c.out_dir) / name; }

void write_table(const RunConfig& c, const ResultTable& t, const std::string& stem) {
  if (c.format == "json") {
    t.write_json(artifact(c, stem + ".json"));
  } else {
    t.write_csv(artifact(c, stem + ".csv"));
  }
}

void write_json(const RunConfig& c, const nlohmann::json& j, const std::string& stem) {
  write_text_file(artifact(c, stem + ".json"), j.dump(2) + "\n");
}

nlohmann::json run_metadata(const RunConfig& c) {
  nlohmann::json meta = {{"config", dump_config(c)}};
  meta.update(provenance());
  return meta;
}

// user-facing value of an internal parameter
double user_value(const RunConfig& c, const std::string& name, double internal) {
  return internal / unit_scale(c, name);
}

int cmd_steady(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ChainSpec spec = chain_spec(c);
  SolverOptions solver = solver_options(c);
  solver.compute_gap = true;
  const SteadyState ss = steady_state(build_model(spec), solver);
  const double conc = pair_concurrence(ss.rho, 1);
  std::vector<std::string> names{"concurrence", "purity", "residual", "gap"};
  std::vector<double> row{conc, purity(ss.rho), ss.residual, ss.gap.value_or(std::nan(""))};
  ctx.out << std::setprecision(6) << "concurrence " << conc << "\n";
  if (spec.n >= 2) {
    const double outer = outer_pair_concurrence(ss.rho, spec);
    names.push_back("outer_pair_concurrence");
    row.push_back(outer);
    ctx.out << "outer_pair_concurrence " << outer << "\n";
  }
  ctx.out << "purity " << row[1] << "\nresidual " << std::setprecision(3) << ss.residual << "\n";
  ResultTable t(names);
  t.append_row(row);
  t.metadata() = run_metadata(c);
  write_table(c, t, "steady");
  return kExitOk;
}

int cmd_evolve(Context& ctx) {
  const RunConfig& c = ctx.config;
  if (!(c.t_max > 0.0)) throw ConfigError("t_max: must be positive");
  const ChainSpec spec = chain_spec(c);
  const LindbladModel model = build_model(spec);
  std::vector<double> times;
  for (int k = 0; k < c.points; ++k) times.push_back(c.t_max * k / (c.points - 1));
  const DensityMatrix vacuum = basis_state(model.layout, std::vector<int>(model.layout.size(), 0)).density();
  const EvolutionTrace trace = evolve(model, vacuum, times);
  std::vector<std::string> names{"t", "concurrence", "purity"};
  if (spec.n >= 2) names.push_back("outer_pair_concurrence");
  ResultTable t(names);
  LinePlot plot;
  plot.series.push_back({"C(A1, B1)", {}, {}});
  if (spec.n >= 2) plot.series.push_back({"C(outer pair)", {}, {}, true});
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<double> row{times[k], pair_concurrence(trace.states[k], 1), purity(trace.states[k])};
    if (spec.n >= 2) row.push_back(outer_pair_concurrence(trace.states[k], spec));
    t.append_row(row);
    plot.series[0].x.push_back(times[k]);
    plot.series[0].y.push_back(row[1]);
    if (spec.n >= 2) {
      plot.series[1].x.push_back(times[k]);
      plot.series[1].y.push_back(row[3]);
    }
  }
  t.metadata() = run_metadata(c);
  t.metadata()["time_unit"] = c.absolute_units() ? "us" : "1/gamma";
  write_table(c, t, "evolve");
  if (c.plot == "svg") {
    plot.title = "Concurrence from the vacuum";
    plot.xlabel = c.absolute_units() ? "t (us)" : "gamma t";
    plot.ylabel = "C";
    plot.ylim = {{0.0, 1.0}};
    write_text_file(artifact(c, "evolve.svg"), render_svg(plot));
  }
  ctx.out << std::setprecision(6) << "concurrence at t = " << c.t_max << ": " << t.column("concurrence").back()
          << "\nmax trace drift " << std::setprecision(3) << trace.max_trace_drift << "\n";
  return kExitOk;
}

int cmd_sweep(Context& ctx) {
  const RunConfig& c = ctx.config;
  SweepSpec s;
  s.base = chain_spec(c);
  s.axes = sweep_axes(c);
  s.metrics = sweep_metrics(c);
  s.threads = c.threads;
  s.budget = c.budget;
  s.solver.tol = solver_options(c).tol;
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("axes: ") + e.what());
  }
  const ResultTable raw = sweep(s);

  // axis columns back in user units
  ResultTable t(raw.column_names());
  for (std::size_t r = 0; r < raw.rows(); ++r) {
    std::vector<double> row;
    for (const auto& name : raw.column_names()) row.push_back(raw.at(r, name));
    for (std::size_t a = 0; a < s.axes.size(); ++a) row[a] = user_value(c, s.axes[a].name, row[a]);
    t.append_row(row, raw.error(r));
  }
  t.metadata() = raw.metadata();
  t.metadata().update(run_metadata(c));
  write_table(c, t, "sweep");

  const std::string metric = metric_name(s.metrics.front());
  if (c.plot == "svg") {
    const bool logx = c.axes[0].size() > 4 && c.axes[0].substr(c.axes[0].size() - 4) == ":log";
    if (s.axes.size() == 1) {
      LinePlot plot;
      plot.series.push_back({metric, t.column(s.axes[0].name), t.column(metric)});
      plot.xlabel = s.axes[0].name;
      plot.ylabel = metric;
      plot.logx = logx;
      write_text_file(artifact(c, "sweep.svg"), render_svg(plot));
    } else {
      Heatmap map;
      const std::size_t ny = s.axes[1].values.size();
      for (double v : s.axes[0].values) map.x.push_back(user_value(c, s.axes[0].name, v));
      for (double v : s.axes[1].values) map.y.push_back(user_value(c, s.axes[1].name, v));
      map.z.assign(ny, std::vector<double>(map.x.size()));
      for (std::size_t r = 0; r < t.rows(); ++r) map.z[r % ny][r / ny] = t.at(r, metric);
      const bool increasing = std::is_sorted(map.x.begin(), map.x.end()) && std::is_sorted(map.y.begin(), map.y.end());
      if (increasing) {
        map.logx = logx;
        map.logy = c.axes[1].size() > 4 && c.axes[1].substr(c.axes[1].size() - 4) == ":log";
        map.xlabel = s.axes[0].name;
        map.ylabel = s.axes[1].name;
        map.title = metric;
        double lo = INFINITY, hi = -INFINITY;
        for (double v : t.column(metric)) {
          if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
        }
        map.center = std::isfinite(lo) ? 0.5 * (lo + hi) : 0.0;
        write_text_file(artifact(c, "sweep.svg"), render_svg(map));
      }
    }
  }
  std::size_t failed = 0;
  for (std::size_t r = 0; r < t.rows(); ++r) failed += !t.error(r).empty();
  const auto& col = t.column(metric);
  std::size_t best = 0;
  for (std::size_t r = 0; r < col.size(); ++r) {
    if (std::isfinite(col[r]) && !(col[best] >= col[r])) best = r;
  }
  ctx.out << t.rows() << " grid points, " << failed << " failed\n" << std::setprecision(6) << "max " << metric << " "
          << col[best] << " at";
  for (const auto& a : s.axes) ctx.out << " " << a.name << "=" << t.at(best, a.name);
  ctx.out << "\n";
  return kExitOk;
}

int cmd_optimize(Context& ctx) {
  const RunConfig& c = ctx.config;
  OptimizeSpec s;
  s.base = chain_spec(c);
  s.free = free_parameters(c);
  s.objective = objective(c);
  s.grid_points = c.grid_points;
  s.max_evaluations = c.max_evaluations;
  s.threads = c.threads;
  s.solver.tol = solver_options(c).tol;
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("free: ") + e.what());
  }
  const OptimizeResult r = optimize(s);
  ResultTable t(r.iterates.column_names());
  for (std::size_t k = 0; k < r.iterates.rows(); ++k) {
    std::vector<double> row;
    for (const auto& name : r.iterates.column_names()) row.push_back(r.iterates.at(k, name));
    for (std::size_t p = 0; p < s.free.size(); ++p) row[p + 1] = user_value(c, s.free[p].name, row[p + 1]);
    t.append_row(row, r.iterates.error(k));
  }
  t.metadata() = r.iterates.metadata();
  t.metadata().update(run_metadata(c));
  write_table(c, t, "optimize");
  nlohmann::json best = {{"value", r.best_value}, {"seed_value", r.seed_value}, {"evaluations", r.evaluations},
                         {"budget_exhausted", r.budget_exhausted}};
  ctx.out << std::setprecision(6) << "best " << c.objective << " concurrence " << r.best_value << "\n";
  for (std::size_t p = 0; p < s.free.size(); ++p) {
    const double v = user_value(c, s.free[p].name, r.best_parameters[p]);
    best["parameters"][s.free[p].name] = v;
    ctx.out << "  " << s.free[p].name << " = " << v << "\n";
  }
  ctx.out << r.evaluations << " evaluations" << (r.budget_exhausted ? ", budget exhausted" : "") << "\n";
  write_json(c, best, "optimize_best");
  return kExitOk;
}

int cmd_verify(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ChainSpec spec = chain_spec(c);
  if (c.eta2 != 1.0) throw ConfigError("eta2: dark states exist only for a lossless waveguide (eta2 = 1)");
  if (c.t1_us) throw ConfigError("t1_us: dark states exist only without intrinsic relaxation");
  if (c.omega_a != c.omega_b || !(c.omega_a > 0.0)) {
    throw ConfigError("omega_a, omega_b: verification needs equal positive drives");
  }
  if (spec.n >= 2 && c.delta != 0.0) throw ConfigError("delta: chain dark states need zero detuning");
  PureState psi;
  switch (spec.n) {
    case 1: psi = psi0(spec.omega_a, spec.delta, spec.gamma); break;
    case 2: psi = psi2(spec.omega_a, spec.gamma, spec.hopping[0]); break;
    case 3: psi = psi3(spec.omega_a, spec.gamma, spec.hopping[0], spec.hopping[1]); break;
    default: psi = psi_hole_pair(spec);
  }
  const DarkStateReport rep = verify_dark_state(psi, build_model(spec), 1e-9);
  ctx.out << std::setprecision(3);
  for (std::size_t k = 0; k < rep.collapse_norms.size(); ++k) {
    ctx.out << "||c" << k + 1 << " psi|| = " << rep.collapse_norms[k] << "\n";
  }
  ctx.out << "||(H - E) psi|| = " << rep.energy_residual << "\nliouvillian residual = " << rep.liouvillian_residual
          << "\n" << (rep.passed ? "dark state verified" : "dark state check FAILED") << " (tolerance 1e-9)\n";
  write_json(c,
             {{"collapse_norms", rep.collapse_norms},
              {"energy", rep.energy},
              {"energy_residual", rep.energy_residual},
              {"liouvillian_residual", rep.liouvillian_residual},
              {"passed", rep.passed},
              {"metadata", run_metadata(c)}},
             "verify");
  return rep.passed ? kExitOk : kExitSolver;
}

int cmd_rates(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ChainSpec spec = chain_spec(c);
  if (spec.n != 2) throw ConfigError("n: rate estimates are defined for the 2+2 system");
  if (c.omega_a != c.omega_b) throw ConfigError("omega_a, omega_b: rate estimates assume a symmetric drive");
  const RateEstimates r = rate_estimates(spec.omega_a, spec.gamma, spec.hopping[0], spec.eta);
  const double n1 = singlet_population(spec.omega_a, spec.gamma, spec.hopping[0]);
  const double k = unit_scale(c, "gamma");
  const char* unit = c.absolute_units() ? " MHz" : " (units of gamma)";
  ctx.out << std::setprecision(6) << "n1 = " << n1 << "\ngamma_loss = " << r.gamma_loss / k << unit
          << "\ngamma_rel = " << r.gamma_rel / k << unit << "\ngamma_rel / gamma_loss = " << r.gamma_rel / r.gamma_loss
          << "\n";
  write_json(c,
             {{"n1", n1},
              {"gamma_loss", r.gamma_loss / k},
              {"gamma_rel", r.gamma_rel / k},
              {"ratio", r.gamma_rel / r.gamma_loss},
              {"metadata", run_metadata(c)}},
             "rates");
  return kExitOk;
}

int cmd_figure(Context& ctx, const std::string& id) {
  const RunConfig& c = ctx.config;
  const auto& ids = figure_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    std::string list;
    for (const auto& i : ids) list += (list.empty() ? "" : ", ") + i;
    throw ConfigError("figure: unknown id '" + id + "' (expected one of " + list + ")");
  }
  FigureOptions o;
  o.resolution = c.resolution;
  if (o.resolution == 1) throw ConfigError("resolution: must be 0 or at least 2");
  o.threads = c.threads;
  o.grid_points = c.grid_points;
  o.max_evaluations = c.max_evaluations;
  const FigureResult fig = reproduce_figure(id, o);
  write_table(c, fig.table, id);
  if (c.plot == "svg") write_text_file(artifact(c, id + ".svg"), fig.svg);
  ctx.out << id << ": " << fig.table.rows() << " rows written to " << c.out_dir << "\n";
  const auto& meta = fig.table.metadata();
  if (meta.contains("threshold")) {
    ctx.out << std::setprecision(4) << "minimal gamma/2pi for C = 0.56: " << meta["threshold"]["gamma_mhz"].get<double>()
            << " MHz (1/gamma = " << meta["threshold"]["decay_time_ns"].get<double>() << " ns)\n";
  }
  if (meta.contains("c1_max")) {
    ctx.out << std::setprecision(4) << "C1 max " << meta["c1_max"].get<double>() << ", grid max "
            << meta["grid_max"].get<double>() << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Driven-dissipative entanglement in cascaded waveguide qubit chains", "wqed"};
  app.require_subcommand(1);
  app.set_version_flag("--version", WQED_CLI_VERSION);

  struct Command {
    CLI::App* app;
    std::string config_path;
    bool dump = false;
    std::map<std::string, std::string> flags;
    std::string figure;
  };
  static const std::pair<const char*, const char*> commands[] = {
      {"steady", "steady state and its entanglement"},
      {"evolve", "time evolution from the vacuum"},
      {"sweep", "grid sweep of steady-state metrics"},
      {"optimize", "maximize steady-state concurrence"},
      {"verify", "check the analytic dark state of a lossless chain"},
      {"figure", "reproduce a figure: table plus SVG"},
      {"rates", "loss and relaxation rate estimates for the 2+2 system"}};
  std::vector<std::unique_ptr<Command>> cmds;
  for (const auto& [name, help] : commands) {
    auto cmd = std::make_unique<Command>();
    cmd->app = app.add_subcommand(name, help);
    cmd->app->add_option("--config", cmd->config_path, "flat key = value file; flags override it");
    cmd->app->add_flag("--dump-config", cmd->dump, "print the effective configuration and exit");
    for (const auto& key : config_keys()) cmd->app->add_option(flag_name(key), cmd->flags[key]);
    if (std::string(name) == "figure") cmd->app->add_option("id", cmd->figure, "figure id")->required();
    cmds.push_back(std::move(cmd));
  }

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    for (const auto& c : cmds) {
      if (c->app->parsed()) out << c->app->help();
    }
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << WQED_CLI_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  const Command* cmd = nullptr;
  for (const auto& c : cmds) {
    if (c->app->parsed()) cmd = c.get();
  }
  try {
    RunConfig config = cmd->config_path.empty() ? RunConfig{} : load_config(cmd->config_path);
    for (const auto& key : config_keys()) {
      if (cmd->app->count(flag_name(key))) set_config_value(config, key, cmd->flags.at(key));
    }
    if (cmd->dump) {
      out << dump_config(config);
      return kExitOk;
    }
    Context ctx{config, out};
    const std::string name = cmd->app->get_name();
    if (name == "steady") return cmd_steady(ctx);
    if (name == "evolve") return cmd_evolve(ctx);
    if (name == "sweep") return cmd_sweep(ctx);
    if (name == "optimize") return cmd_optimize(ctx);
    if (name == "verify") return cmd_verify(ctx);
    if (name == "rates") return cmd_rates(ctx);
    return cmd_figure(ctx, cmd->figure);
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace wqed
