// Minimal SVG line-plot writer.
#pragma once

#include <string>
#include <vector>

namespace adiaprep {

struct PlotTrace {
  std::string name;
  std::string color;
  std::vector<double> xs;
  std::vector<double> ys;
  bool markers = false;
};

struct PlotLayout {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 720;
  int height = 440;
  int ticks = 5;
};

/// Renders traces on shared linear axes. Output depends only on the inputs.
std::string render_svg_plot(const PlotLayout& layout, const std::vector<PlotTrace>& traces);

}  // namespace adiaprep
