#pragma once

#include <string>
#include <vector>

namespace hchain::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Polyline plot with linear axes.
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<Series>& series);

/// Level curves of values[row][col] sampled at (xs[col], ys[row]), traced
/// by marching squares, plus optional overlay polylines.
std::string svg_level_sets(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<double>& xs,
                           const std::vector<double>& ys,
                           const std::vector<std::vector<double>>& values,
                           const std::vector<double>& levels, const std::vector<Series>& overlays);

}  // namespace hchain::cli
