// plot.hpp: minimal SVG line plots and heatmaps

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wqed {

struct Series {
  std::string label;
  std::vector<double> x, y;  ///< non-finite points break the polyline
  bool dashed = false;
};

struct LinePlot {
  std::string title, xlabel, ylabel;
  bool logx = false, logy = false;
  std::vector<Series> series;
  std::vector<std::pair<double, std::string>> markers;  ///< labelled vertical lines
  std::optional<std::pair<double, double>> ylim;
};

struct Heatmap {
  std::string title, xlabel, ylabel;
  std::vector<double> x, y;            ///< cell centres, monotone increasing
  std::vector<std::vector<double>> z;  ///< z[iy][ix]
  bool logx = false, logy = false;
  double center = 0.0;                 ///< value mapped to white
  std::vector<double> contours;
};

std::string render_svg(const LinePlot& plot);
std::string render_svg(const Heatmap& map);

/// Line segments of the iso-line z = level over the grid, in data coordinates.
std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>> contour_segments(const Heatmap& map,
                                                                                           double level);

/// Places rendered plots left to right in one document.
std::string side_by_side(const std::vector<std::string>& panels);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace wqed
