#include "wqed/config.hpp"

#include "wqed/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace wqed {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError(key + ": expected a finite number, got '" + text + "'");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& text, long long lo) {
  const std::string t = trim(text);
  long long v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  if (v < lo) throw ConfigError(key + ": must be at least " + std::to_string(lo));
  return v;
}

std::string one_of(const std::string& key, const std::string& value, std::initializer_list<const char*> allowed) {
  const std::string v = trim(value);
  for (const char* a : allowed) {
    if (v == a) return v;
  }
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw ConfigError(key + ": expected one of " + list + ", got '" + value + "'");
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string numbers(const std::vector<double>& v) {
  std::vector<std::string> s;
  for (double x : v) s.push_back(format_number(x));
  return join(s, ", ");
}

bool is_rate(const std::string& name) {
  return name == "omega" || name == "omega_a" || name == "omega_b" || name == "gamma" || name == "delta" ||
         name == "j" || (name.size() == 3 && name[0] == 'j' && std::isdigit(static_cast<unsigned char>(name[1])));
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "n",       "gamma",     "eta2",  "omega_a", "omega_b",   "delta",          "j",       "t1_us",
      "tol",     "budget",    "threads", "format", "plot",     "out_dir",        "axes",    "metrics",
      "free",    "objective", "t_max", "points",  "resolution", "grid_points",   "max_evaluations"};
  return keys;
}

void set_config_value(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "n") {
    c.n = static_cast<int>(to_integer(key, value, 1));
    if (c.n > 4) throw ConfigError("n: chains longer than 4 sites are not supported");
  } else if (key == "gamma") {
    c.gamma = to_double(key, value);
  } else if (key == "eta2") {
    c.eta2 = to_double(key, value);
  } else if (key == "omega_a") {
    c.omega_a = to_double(key, value);
  } else if (key == "omega_b") {
    c.omega_b = to_double(key, value);
  } else if (key == "delta") {
    c.delta = to_double(key, value);
  } else if (key == "j") {
    c.j.clear();
    for (const auto& item : split(value, ',')) c.j.push_back(to_double(key, item));
  } else if (key == "t1_us") {
    if (trim(value) == "none" || trim(value).empty()) {
      c.t1_us.reset();
    } else {
      c.t1_us = to_double(key, value);
    }
  } else if (key == "tol") {
    c.tol = to_double(key, value);
  } else if (key == "budget") {
    c.budget = static_cast<std::size_t>(to_integer(key, value, 1));
  } else if (key == "threads") {
    c.threads = static_cast<int>(to_integer(key, value, 0));
  } else if (key == "format") {
    c.format = one_of(key, value, {"csv", "json"});
  } else if (key == "plot") {
    c.plot = one_of(key, value, {"none", "svg"});
  } else if (key == "out_dir") {
    c.out_dir = trim(value);
    if (c.out_dir.empty()) throw ConfigError("out_dir: must not be empty");
  } else if (key == "axes") {
    c.axes = split(value, ';');
  } else if (key == "metrics") {
    c.metrics = split(value, ',');
  } else if (key == "free") {
    c.free = split(value, ';');
  } else if (key == "objective") {
    c.objective = one_of(key, value, {"pair", "outer_pair"});
  } else if (key == "t_max") {
    c.t_max = to_double(key, value);
  } else if (key == "points") {
    c.points = static_cast<int>(to_integer(key, value, 2));
  } else if (key == "resolution") {
    c.resolution = static_cast<int>(to_integer(key, value, 0));
  } else if (key == "grid_points") {
    c.grid_points = static_cast<int>(to_integer(key, value, 2));
  } else if (key == "max_evaluations") {
    c.max_evaluations = static_cast<std::size_t>(to_integer(key, value, 1));
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    set_config_value(c, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream out;
  out << "n = " << c.n << "\n"
      << "gamma = " << format_number(c.gamma) << "\n"
      << "eta2 = " << format_number(c.eta2) << "\n"
      << "omega_a = " << format_number(c.omega_a) << "\n"
      << "omega_b = " << format_number(c.omega_b) << "\n"
      << "delta = " << format_number(c.delta) << "\n"
      << "j = " << numbers(c.j) << "\n"
      << "t1_us = " << (c.t1_us ? format_number(*c.t1_us) : "none") << "\n"
      << "tol = " << format_number(c.tol) << "\n"
      << "budget = " << c.budget << "\n"
      << "threads = " << c.threads << "\n"
      << "format = " << c.format << "\n"
      << "plot = " << c.plot << "\n"
      << "out_dir = " << c.out_dir << "\n"
      << "axes = " << join(c.axes, "; ") << "\n"
      << "metrics = " << join(c.metrics, ", ") << "\n"
      << "free = " << join(c.free, "; ") << "\n"
      << "objective = " << c.objective << "\n"
      << "t_max = " << format_number(c.t_max) << "\n"
      << "points = " << c.points << "\n"
      << "resolution = " << c.resolution << "\n"
      << "grid_points = " << c.grid_points << "\n"
      << "max_evaluations = " << c.max_evaluations << "\n";
  return out.str();
}

double unit_scale(const RunConfig& c, const std::string& parameter) {
  return c.absolute_units() && is_rate(parameter) ? 2 * std::numbers::pi : 1.0;
}

ChainSpec chain_spec(const RunConfig& c) {
  ChainSpec s;
  s.n = c.n;
  const double k = unit_scale(c, "gamma");
  s.gamma = k * c.gamma;
  if (!(c.eta2 >= 0.0 && c.eta2 <= 1.0)) throw ConfigError("eta2: must lie in [0, 1]");
  s.set_eta2(c.eta2);
  s.omega_a = k * c.omega_a;
  s.omega_b = k * c.omega_b;
  s.delta = k * c.delta;
  for (double J : c.j) s.hopping.push_back(k * J);
  s.t1 = c.t1_us;
  if (s.hopping.size() != static_cast<std::size_t>(c.n - 1)) {
    throw ConfigError("j: expected " + std::to_string(c.n - 1) + " comma-separated hopping rates for n = " +
                      std::to_string(c.n) + ", got " + std::to_string(c.j.size()));
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    if (msg.rfind("t1", 0) == 0) msg = "t1_us" + msg.substr(2);
    throw ConfigError(msg);
  }
  return s;
}

SolverOptions solver_options(const RunConfig& c) {
  if (!(c.tol > 0.0)) throw ConfigError("tol: must be positive");
  SolverOptions o;
  o.tol = c.tol;
  return o;
}

std::vector<SweepAxis> sweep_axes(const RunConfig& c) {
  if (c.axes.empty()) throw ConfigError("axes: at least one axis name:lo:hi:points[:log|lin] is required");
  std::vector<SweepAxis> out;
  for (const auto& a : c.axes) {
    const auto parts = split(a, ':');
    if (parts.size() != 4 && parts.size() != 5) throw ConfigError("axes: malformed axis '" + a + "'");
    const std::string& name = parts[0];
    if (!is_parameter(name)) throw ConfigError("axes: unknown parameter '" + name + "'");
    const double k = unit_scale(c, name);
    const double lo = to_double("axes", parts[1]), hi = to_double("axes", parts[2]);
    const int points = static_cast<int>(to_integer("axes", parts[3], 1));
    const std::string kind = parts.size() == 5 ? one_of("axes", parts[4], {"log", "lin"}) : "lin";
    try {
      out.push_back(kind == "log" ? SweepAxis::log(name, k * lo, k * hi, points)
                                  : SweepAxis::linear(name, k * lo, k * hi, points));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("axes: ") + e.what());
    }
  }
  return out;
}

std::vector<Metric> sweep_metrics(const RunConfig& c) {
  std::vector<Metric> out;
  for (const auto& m : c.metrics) {
    try {
      out.push_back(parse_metric(m));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("metrics: ") + e.what());
    }
  }
  if (out.empty()) throw ConfigError("metrics: at least one metric is required");
  return out;
}

std::vector<FreeParameter> free_parameters(const RunConfig& c) {
  if (c.free.empty()) throw ConfigError("free: at least one parameter name:lo:hi is required");
  std::vector<FreeParameter> out;
  for (const auto& f : c.free) {
    const auto parts = split(f, ':');
    if (parts.size() != 3) throw ConfigError("free: malformed parameter '" + f + "'");
    if (!is_parameter(parts[0])) throw ConfigError("free: unknown parameter '" + parts[0] + "'");
    const double k = unit_scale(c, parts[0]);
    out.push_back({parts[0], k * to_double("free", parts[1]), k * to_double("free", parts[2])});
  }
  return out;
}

Objective objective(const RunConfig& c) {
  return c.objective == "pair" ? Objective::PairConcurrence : Objective::OuterPairConcurrence;
}

}  // namespace wqed
