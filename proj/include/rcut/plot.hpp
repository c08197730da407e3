#pragma once

#include <span>
#include <string>
#include <vector>

namespace rcut {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// gnuplot data: one "# name" block per series, blocks separated by two
// blank lines so they can be addressed with `index`.
std::string gnuplot_data(std::span<const Series> series);

struct PlotLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

// Standalone SVG with axes, tick labels, one polyline per series and a legend.
std::string svg_line_plot(std::span<const Series> series, const PlotLabels& labels, int width = 640, int height = 400);

}  // namespace rcut
