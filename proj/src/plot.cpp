#include "rcut/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rcut/error.hpp"

namespace rcut {

namespace {

std::string num(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
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

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

}  // namespace

std::string gnuplot_data(std::span<const Series> series) {
  std::ostringstream os;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    if (s.x.size() != s.y.size()) throw ValidationError("series '" + s.name + "' has mismatched lengths");
    if (k > 0) os << "\n\n";
    os << "# " << s.name << '\n';
    for (std::size_t i = 0; i < s.x.size(); ++i) os << num(s.x[i]) << ' ' << num(s.y[i]) << '\n';
  }
  return os.str();
}

std::string svg_line_plot(std::span<const Series> series, const PlotLabels& labels, int width, int height) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw ValidationError("series '" + s.name + "' has mismatched lengths");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;

  const double left = 70, right = 150, top = 40, bottom = 50;
  const double pw = width - left - right, ph = height - top - bottom;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(labels.title)
     << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0, fy = y0 + (y1 - y0) * i / 4.0;
    os << "<text x=\"" << num(px(fx), 6) << "\" y=\"" << num(top + ph + 15, 6) << "\" text-anchor=\"middle\">"
       << num(fx, 4) << "</text>\n";
    os << "<text x=\"" << num(left - 5, 6) << "\" y=\"" << num(py(fy) + 4, 6) << "\" text-anchor=\"end\">" << num(fy, 4)
       << "</text>\n";
  }
  os << "<text x=\"" << num(left + pw / 2, 6) << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
     << escape_xml(labels.x_label) << "</text>\n";
  os << "<text x=\"15\" y=\"" << num(top + ph / 2, 6) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
     << num(top + ph / 2, 6) << ")\">" << escape_xml(labels.y_label) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      os << num(px(s.x[i]), 6) << ',' << num(py(s.y[i]), 6) << ' ';
    }
    os << "\"/>\n";
    const double ly = top + 15 + 16.0 * static_cast<double>(k);
    os << "<line x1=\"" << num(left + pw + 10, 6) << "\" y1=\"" << num(ly, 6) << "\" x2=\"" << num(left + pw + 30, 6)
       << "\" y2=\"" << num(ly, 6) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(left + pw + 35, 6) << "\" y=\"" << num(ly + 4, 6) << "\">" << escape_xml(s.name)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rcut
