#pragma once

#include <string>
#include <vector>

namespace stlab {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct PlotPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Line plots side by side in one SVG document. Output depends only on the
/// input values.
std::string render_svg(const std::vector<PlotPanel>& panels);

}  // namespace stlab
