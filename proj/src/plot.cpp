#include "wqed/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wqed {

namespace {

constexpr double kWidth = 640, kHeight = 440;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo, hi;
  bool log;
  double px0, px1;

  double operator()(double v) const {
    const double a = log ? std::log10(lo) : lo, b = log ? std::log10(hi) : hi;
    const double t = ((log ? std::log10(v) : v) - a) / (b - a);
    return px0 + t * (px1 - px0);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::floor(std::log10(lo)); e <= std::ceil(std::log10(hi)); ++e) {
        const double v = std::pow(10.0, e);
        if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) out.push_back(v);
      }
      return out;
    }
    const double raw = (hi - lo) / 5;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double step = raw / mag < 2 ? 2 * mag : raw / mag < 5 ? 5 * mag : 10 * mag;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return out;
  }
};

std::string tick_label(double v, bool log) {
  std::ostringstream s;
  if (log) {
    s << "1e" << static_cast<int>(std::lround(std::log10(v)));
  } else {
    s << std::setprecision(3) << v;
  }
  return s.str();
}

std::pair<double, double> finite_range(const std::vector<double>& v, bool log) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double x : v) {
    if (!std::isfinite(x) || (log && x <= 0)) continue;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (!std::isfinite(lo)) return {log ? 0.1 : 0.0, 1.0};
  if (lo == hi) return log ? std::pair{lo / 2, hi * 2} : std::pair{lo - 0.5, hi + 0.5};
  return {lo, hi};
}

void frame(std::ostringstream& svg, const std::string& title, const std::string& xlabel, const std::string& ylabel,
           const Axis& ax, const Axis& ay) {
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight << "\" height=\""
      << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ax.ticks()) {
    const double px = ax(t);
    svg << "<line x1=\"" << px << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << px << "\" y2=\"" << kHeight - kBottom + 5
        << "\" stroke=\"black\"/><text x=\"" << px << "\" y=\"" << kHeight - kBottom + 20
        << "\" text-anchor=\"middle\">" << tick_label(t, ax.log) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double py = ay(t);
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft << "\" y2=\"" << py
        << "\" stroke=\"black\"/><text x=\"" << kLeft - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">"
        << tick_label(t, ay.log) << "</text>\n";
  }
  svg << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kTop - 15 << "\" text-anchor=\"middle\">"
      << escape(title) << "</text>\n";
  svg << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
      << escape(xlabel) << "</text>\n";
  svg << "<text transform=\"translate(18," << (kTop + kHeight - kBottom) / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(ylabel) << "</text>\n";
}

std::string open_svg() {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return s.str();
}

// blue below center, red above
std::string diverging(double v, double center, double span) {
  if (!std::isfinite(v)) return "#bbbbbb";
  const double t = std::clamp((v - center) / span, -1.0, 1.0);
  const int fade = static_cast<int>(std::lround(255 * (1 - std::abs(t))));
  std::ostringstream s;
  s << "rgb(" << (t < 0 ? fade : 255) << "," << fade << "," << (t > 0 ? fade : 255) << ")";
  return s.str();
}

}  // namespace

std::string render_svg(const LinePlot& plot) {
  std::vector<double> xs, ys;
  for (const auto& s : plot.series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("series " + s.label + ": x and y lengths differ");
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  const auto [x0, x1] = finite_range(xs, plot.logx);
  auto [y0, y1] = plot.ylim ? *plot.ylim : finite_range(ys, plot.logy);
  const Axis ax{x0, x1, plot.logx, kLeft, kWidth - kRight};
  const Axis ay{y0, y1, plot.logy, kHeight - kBottom, kTop};

  std::ostringstream svg;
  svg << open_svg() << std::setprecision(6);
  frame(svg, plot.title, plot.xlabel, plot.ylabel, ax, ay);
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::string path;
    bool pen = false;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const bool ok = std::isfinite(s.x[i]) && std::isfinite(s.y[i]) && (!plot.logx || s.x[i] > 0) &&
                      (!plot.logy || s.y[i] > 0);
      if (!ok) {
        pen = false;
        continue;
      }
      std::ostringstream p;
      p << std::setprecision(6) << (pen ? " L" : " M") << ax(s.x[i]) << "," << ay(std::clamp(s.y[i], y0, y1));
      path += p.str();
      pen = true;
    }
    svg << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
        << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    const double ly = kTop + 10 + 18 * static_cast<double>(k);
    svg << "<line x1=\"" << kWidth - kRight + 10 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 35 << "\" y2=\""
        << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "")
        << "/><text x=\"" << kWidth - kRight + 40 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
  }
  for (const auto& [x, label] : plot.markers) {
    if (!std::isfinite(x) || x < x0 || x > x1) continue;
    svg << "<line x1=\"" << ax(x) << "\" y1=\"" << kTop << "\" x2=\"" << ax(x) << "\" y2=\"" << kHeight - kBottom
        << "\" stroke=\"gray\" stroke-dasharray=\"2,3\"/><text x=\"" << ax(x) + 3 << "\" y=\"" << kTop + 12
        << "\" fill=\"gray\" font-size=\"10\">" << escape(label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>> contour_segments(const Heatmap& map,
                                                                                           double level) {
  std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>> out;
  const std::size_t ny = map.y.size(), nx = map.x.size();
  auto lerp = [&](double a, double b, double za, double zb) { return a + (level - za) / (zb - za) * (b - a); };
  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      // corners counter-clockwise from bottom-left
      const double z[4] = {map.z[j][i], map.z[j][i + 1], map.z[j + 1][i + 1], map.z[j + 1][i]};
      const double px[4] = {map.x[i], map.x[i + 1], map.x[i + 1], map.x[i]};
      const double py[4] = {map.y[j], map.y[j], map.y[j + 1], map.y[j + 1]};
      if (!std::all_of(std::begin(z), std::end(z), [](double v) { return std::isfinite(v); })) continue;
      std::vector<std::pair<double, double>> hits;
      for (int e = 0; e < 4; ++e) {
        const int f = (e + 1) % 4;
        if ((z[e] < level) != (z[f] < level)) {
          hits.emplace_back(lerp(px[e], px[f], z[e], z[f]), lerp(py[e], py[f], z[e], z[f]));
        }
      }
      if (hits.size() == 2) {
        out.push_back({hits[0], hits[1]});
      } else if (hits.size() == 4) {
        const double mid = 0.25 * (z[0] + z[1] + z[2] + z[3]);
        if ((mid < level) == (z[0] < level)) {
          out.push_back({hits[0], hits[1]});
          out.push_back({hits[2], hits[3]});
        } else {
          out.push_back({hits[0], hits[3]});
          out.push_back({hits[1], hits[2]});
        }
      }
    }
  }
  return out;
}

std::string render_svg(const Heatmap& map) {
  if (map.x.empty() || map.y.empty() || map.z.size() != map.y.size()) throw std::invalid_argument("heatmap: bad shape");
  for (const auto& row : map.z) {
    if (row.size() != map.x.size()) throw std::invalid_argument("heatmap: bad shape");
  }
  auto edges = [](const std::vector<double>& c, bool log) {
    std::vector<double> e(c.size() + 1);
    auto f = [log](double v) { return log ? std::log(v) : v; };
    auto g = [log](double v) { return log ? std::exp(v) : v; };
    if (c.size() == 1) {
      e[0] = log ? c[0] / 2 : c[0] - 0.5;
      e[1] = log ? c[0] * 2 : c[0] + 0.5;
      return e;
    }
    for (std::size_t i = 1; i < c.size(); ++i) e[i] = g(0.5 * (f(c[i - 1]) + f(c[i])));
    e.front() = g(2 * f(c[0]) - f(e[1]));
    e.back() = g(2 * f(c.back()) - f(e[c.size() - 1]));
    return e;
  };
  const auto ex = edges(map.x, map.logx), ey = edges(map.y, map.logy);
  const Axis ax{ex.front(), ex.back(), map.logx, kLeft, kWidth - kRight};
  const Axis ay{ey.front(), ey.back(), map.logy, kHeight - kBottom, kTop};
  double span = 0.0;
  for (const auto& row : map.z)
    for (double v : row)
      if (std::isfinite(v)) span = std::max(span, std::abs(v - map.center));
  if (span == 0.0) span = 1.0;

  std::ostringstream svg;
  svg << open_svg() << std::setprecision(6);
  for (std::size_t j = 0; j < map.y.size(); ++j) {
    for (std::size_t i = 0; i < map.x.size(); ++i) {
      const double xa = ax(ex[i]), xb = ax(ex[i + 1]), ya = ay(ey[j + 1]), yb = ay(ey[j]);
      svg << "<rect x=\"" << xa << "\" y=\"" << ya << "\" width=\"" << xb - xa + 0.3 << "\" height=\"" << yb - ya + 0.3
          << "\" fill=\"" << diverging(map.z[j][i], map.center, span) << "\"/>\n";
    }
  }
  for (double level : map.contours) {
    for (const auto& [a, b] : contour_segments(map, level)) {
      svg << "<line x1=\"" << ax(a.first) << "\" y1=\"" << ay(a.second) << "\" x2=\"" << ax(b.first) << "\" y2=\""
          << ay(b.second) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
  }
  frame(svg, map.title, map.xlabel, map.ylabel, ax, ay);
  // colour bar
  const double bx = kWidth - kRight + 20, bh = kHeight - kTop - kBottom;
  for (int k = 0; k < 50; ++k) {
    const double v = map.center + span * (1 - 2 * (k + 0.5) / 50);
    svg << "<rect x=\"" << bx << "\" y=\"" << kTop + bh * k / 50 << "\" width=\"18\" height=\"" << bh / 50 + 0.3
        << "\" fill=\"" << diverging(v, map.center, span) << "\"/>\n";
  }
  std::ostringstream top, mid, bot;
  top << std::setprecision(3) << map.center + span;
  mid << std::setprecision(3) << map.center;
  bot << std::setprecision(3) << map.center - span;
  svg << "<text x=\"" << bx + 24 << "\" y=\"" << kTop + 10 << "\">" << top.str() << "</text>\n";
  svg << "<text x=\"" << bx + 24 << "\" y=\"" << kTop + bh / 2 + 4 << "\">" << mid.str() << "</text>\n";
  svg << "<text x=\"" << bx + 24 << "\" y=\"" << kTop + bh << "\">" << bot.str() << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string side_by_side(const std::vector<std::string>& panels) {
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth * static_cast<double>(panels.size())
      << "\" height=\"" << kHeight << "\">\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    svg << "<g transform=\"translate(" << kWidth * static_cast<double>(k) << ",0)\">\n" << panels[k] << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace wqed
