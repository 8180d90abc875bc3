#pragma once

#include <string>
#include <vector>

namespace bjpa {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// One polyline per series with axes, ticks and a legend. NaN/inf samples
/// break the polyline instead of corrupting the path.
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<SvgSeries>& series);

struct SvgHeatPanel {
  std::string label;
  std::vector<double> x;       // column coordinates
  std::vector<double> y;       // row coordinates
  std::vector<double> values;  // row-major, y outer
};

/// Stacked heat panels sharing one color scale; saturated cells (NaN) are
/// drawn hatched gray and counted in the annotation.
std::string svg_heat_map(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<SvgHeatPanel>& panels);

}  // namespace bjpa
