#include "adiaprep/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace adiaprep {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    double span = hi - lo;
    if (span <= 1e-12 * std::max(1.0, std::abs(hi))) span = std::max(1e-6, std::abs(hi) * 1e-3);
    lo -= 0.05 * span;
    hi += 0.05 * span;
  }
};

}  // namespace

std::string render_svg_plot(const PlotLayout& layout, const std::vector<PlotTrace>& traces) {
  const double left = 90, right = 20, top = 40, bottom = 60;
  const double w = layout.width - left - right;
  const double h = layout.height - top - bottom;

  Range xr, yr;
  for (const auto& t : traces) {
    for (double x : t.xs) xr.include(x);
    for (double y : t.ys) yr.include(y);
  }
  xr.pad();
  yr.pad();
  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * w; };
  auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << layout.width << "\" height=\""
      << layout.height << "\" viewBox=\"0 0 " << layout.width << ' ' << layout.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << layout.width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"15\">" << escape(layout.title) << "</text>\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= layout.ticks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / layout.ticks;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / layout.ticks;
    const std::string X = fmt("%.2f", px(fx)), Y = fmt("%.2f", py(fy));
    svg << "<line x1=\"" << X << "\" y1=\"" << top + h << "\" x2=\"" << X << "\" y2=\"" << top + h + 5
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << X << "\" y=\"" << top + h + 20 << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"11\">" << fmt("%.4g", fx) << "</text>\n";
    svg << "<line x1=\"" << left - 5 << "\" y1=\"" << Y << "\" x2=\"" << left << "\" y2=\"" << Y
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << Y << "\" text-anchor=\"end\" dominant-baseline=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"11\">" << fmt("%.6g", fy) << "</text>\n";
  }
  svg << "<text x=\"" << left + w / 2 << "\" y=\"" << layout.height - 15
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(layout.x_label)
      << "</text>\n";
  svg << "<text x=\"18\" y=\"" << top + h / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" transform=\"rotate(-90 18 " << top + h / 2 << ")\">" << escape(layout.y_label)
      << "</text>\n";

  int legend_row = 0;
  for (const auto& t : traces) {
    const std::size_t n = std::min(t.xs.size(), t.ys.size());
    svg << "<polyline fill=\"none\" stroke=\"" << t.color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      if (i) svg << ' ';
      svg << fmt("%.2f", px(t.xs[i])) << ',' << fmt("%.2f", py(t.ys[i]));
    }
    svg << "\"/>\n";
    if (t.markers) {
      for (std::size_t i = 0; i < n; ++i) {
        svg << "<circle cx=\"" << fmt("%.2f", px(t.xs[i])) << "\" cy=\"" << fmt("%.2f", py(t.ys[i]))
            << "\" r=\"1.6\" fill=\"" << t.color << "\"/>\n";
      }
    }
    const double ly = top + 14 + 16 * legend_row++;
    svg << "<line x1=\"" << left + w - 150 << "\" y1=\"" << ly << "\" x2=\"" << left + w - 130 << "\" y2=\""
        << ly << "\" stroke=\"" << t.color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << left + w - 124 << "\" y=\"" << ly << "\" dominant-baseline=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"11\">" << escape(t.name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace adiaprep
