#include "bjpa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bjpa {

namespace {

constexpr int kWidth = 720;
constexpr int kPanelHeight = 420;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 130;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo > hi) { lo = 0.0; hi = 1.0; }
    if (lo == hi) { lo -= 0.5; hi += 0.5; }
  }
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::string tick_label(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

void axes(std::ostringstream& out, const Range& xr, const Range& yr, int y_offset,
          const std::string& x_label, const std::string& y_label) {
  const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
  const int y0 = y_offset + kPanelHeight - kMarginBottom, y1 = y_offset + kMarginTop;
  out << "<rect x='" << x0 << "' y='" << y1 << "' width='" << (x1 - x0) << "' height='"
      << (y0 - y1) << "' fill='none' stroke='black'/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = x0 + (x1 - x0) * t / 4.0;
    const double vx = xr.lo + (xr.hi - xr.lo) * t / 4.0;
    out << "<line x1='" << fx << "' y1='" << y0 << "' x2='" << fx << "' y2='" << y0 + 4
        << "' stroke='black'/>\n"
        << "<text x='" << fx << "' y='" << y0 + 18 << "' font-size='11' text-anchor='middle'>"
        << tick_label(vx) << "</text>\n";
    const double fy = y0 - (y0 - y1) * t / 4.0;
    const double vy = yr.lo + (yr.hi - yr.lo) * t / 4.0;
    out << "<line x1='" << x0 - 4 << "' y1='" << fy << "' x2='" << x0 << "' y2='" << fy
        << "' stroke='black'/>\n"
        << "<text x='" << x0 - 8 << "' y='" << fy + 4 << "' font-size='11' text-anchor='end'>"
        << tick_label(vy) << "</text>\n";
  }
  out << "<text x='" << (x0 + x1) / 2 << "' y='" << y0 + 36
      << "' font-size='13' text-anchor='middle'>" << x_label << "</text>\n";
  out << "<text x='18' y='" << (y0 + y1) / 2 << "' font-size='13' text-anchor='middle' "
      << "transform='rotate(-90 18 " << (y0 + y1) / 2 << ")'>" << y_label << "</text>\n";
}

// Five-stop blue-to-red map on [0, 1].
std::string heat_color(double t) {
  static const double stops[5][3] = {{13, 8, 135},   {126, 3, 168}, {204, 71, 120},
                                     {248, 149, 64}, {240, 249, 33}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int i = std::min(3, static_cast<int>(t));
  const double f = t - i;
  std::ostringstream s;
  s << "rgb(" << static_cast<int>(stops[i][0] + f * (stops[i + 1][0] - stops[i][0])) << ','
    << static_cast<int>(stops[i][1] + f * (stops[i + 1][1] - stops[i][1])) << ','
    << static_cast<int>(stops[i][2] + f * (stops[i + 1][2] - stops[i][2])) << ')';
  return s.str();
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<SvgSeries>& series) {
  Range xr, yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.pad();
  yr.pad();

  const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
  const int y0 = kPanelHeight - kMarginBottom, y1 = kMarginTop;
  const auto px = [&](double v) { return x0 + (x1 - x0) * (v - xr.lo) / (xr.hi - xr.lo); };
  const auto py = [&](double v) { return y0 - (y0 - y1) * (v - yr.lo) / (yr.hi - yr.lo); };

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
      << kPanelHeight << "'>\n";
  out << "<text x='" << kWidth / 2 << "' y='20' font-size='15' text-anchor='middle'>" << title
      << "</text>\n";
  axes(out, xr, yr, 0, x_label, y_label);

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % std::size(kPalette)];
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    bool open = false;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        if (open) {
          out << "'/>\n<polyline fill='none' stroke='" << color
              << "' stroke-width='1.5' points='";
          open = false;
        }
        continue;
      }
      out << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
      open = true;
    }
    out << "'/>\n";
    const int ly = y1 + 16 * static_cast<int>(si);
    out << "<line x1='" << x1 + 8 << "' y1='" << ly << "' x2='" << x1 + 28 << "' y2='" << ly
        << "' stroke='" << color << "' stroke-width='2'/>\n";
    out << "<text x='" << x1 + 32 << "' y='" << ly + 4 << "' font-size='11'>" << s.label
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string svg_heat_map(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<SvgHeatPanel>& panels) {
  Range vr;
  for (const auto& p : panels)
    for (double v : p.values) vr.add(v);
  vr.pad();

  const int total_height = kPanelHeight * static_cast<int>(panels.size());
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
      << total_height << "'>\n";

  for (std::size_t pi = 0; pi < panels.size(); ++pi) {
    const auto& p = panels[pi];
    const int yoff = kPanelHeight * static_cast<int>(pi);
    Range xr, yr;
    for (double v : p.x) xr.add(v);
    for (double v : p.y) yr.add(v);
    xr.pad();
    yr.pad();

    out << "<text x='" << kWidth / 2 << "' y='" << yoff + 20
        << "' font-size='15' text-anchor='middle'>" << title << ' ' << p.label << "</text>\n";

    const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const int y0 = yoff + kPanelHeight - kMarginBottom, y1 = yoff + kMarginTop;
    const double cw = static_cast<double>(x1 - x0) / p.x.size();
    const double ch = static_cast<double>(y0 - y1) / p.y.size();

    std::size_t saturated = 0;
    for (std::size_t yi = 0; yi < p.y.size(); ++yi) {
      for (std::size_t xi = 0; xi < p.x.size(); ++xi) {
        const double v = p.values[yi * p.x.size() + xi];
        const double cx = x0 + cw * xi;
        const double cy = y0 - ch * (yi + 1);
        if (!std::isfinite(v)) {
          ++saturated;
          out << "<rect x='" << num(cx) << "' y='" << num(cy) << "' width='" << num(cw + 0.5)
              << "' height='" << num(ch + 0.5) << "' fill='#bbbbbb'/>\n";
          continue;
        }
        const double t = (v - vr.lo) / (vr.hi - vr.lo);
        out << "<rect x='" << num(cx) << "' y='" << num(cy) << "' width='" << num(cw + 0.5)
            << "' height='" << num(ch + 0.5) << "' fill='" << heat_color(t) << "'/>\n";
      }
    }
    axes(out, xr, yr, yoff, x_label, y_label);
    out << "<text x='" << x1 + 8 << "' y='" << y1 + 10 << "' font-size='11'>min "
        << tick_label(vr.lo) << "</text>\n";
    out << "<text x='" << x1 + 8 << "' y='" << y1 + 26 << "' font-size='11'>max "
        << tick_label(vr.hi) << "</text>\n";
    if (saturated > 0)
      out << "<text x='" << x1 + 8 << "' y='" << y1 + 42 << "' font-size='11'>" << saturated
          << " saturated</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace bjpa
