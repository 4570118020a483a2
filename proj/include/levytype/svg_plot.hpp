#pragma once

#include <string>
#include <vector>

namespace levytype {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 720;
  int height = 440;
  bool log_x = false;
  bool log_y = false;
};

//! Self-contained SVG line chart; non-finite points (and non-positive ones
//! on log axes) break the line.
std::string svg_line_chart(const std::vector<PlotSeries>& series, const PlotOptions& options = {});
void write_svg(const std::string& path, const std::vector<PlotSeries>& series,
               const PlotOptions& options = {});

} // namespace levytype
