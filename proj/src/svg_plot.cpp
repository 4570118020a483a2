#include "levytype/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "levytype/types.hpp"

namespace levytype {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '&': out += "&amp;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

} // namespace

std::string svg_line_chart(const std::vector<PlotSeries>& series, const PlotOptions& o) {
  auto tx = [&](double v) { return o.log_x ? (v > 0 ? std::log10(v) : NAN) : v; };
  auto ty = [&](double v) { return o.log_y ? (v > 0 ? std::log10(v) : NAN) : v; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) {
      throw DimensionMismatch("plot series '" + s.label + "' has mismatched x and y");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double a = tx(s.x[i]), b = ty(s.y[i]);
      if (std::isfinite(a) && std::isfinite(b)) {
        x0 = std::min(x0, a), x1 = std::max(x1, a);
        y0 = std::min(y0, b), y1 = std::max(y1, b);
      }
    }
  }
  if (!std::isfinite(x0)) {
    x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  }
  if (x1 - x0 <= 0) {
    x0 -= 0.5, x1 += 0.5;
  }
  if (y1 - y0 <= 0) {
    y0 -= 0.5, y1 += 0.5;
  }
  const double ml = 70, mr = 20, mt = 36, mb = 50;
  const double pw = o.width - ml - mr, ph = o.height - mt - mb;
  auto px = [&](double a) { return ml + (a - x0) / (x1 - x0) * pw; };
  auto py = [&](double b) { return mt + ph - (b - y0) / (y1 - y0) * ph; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o.width << "\" height=\"" << o.height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!o.title.empty()) {
    s << "<text x=\"" << num(o.width / 2.0) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(o.title) << "</text>\n";
  }
  s << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw) << "\" height=\""
    << num(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    double a = x0 + (x1 - x0) * k / 4.0;
    double b = y0 + (y1 - y0) * k / 4.0;
    s << "<text x=\"" << num(px(a)) << "\" y=\"" << num(mt + ph + 16) << "\" text-anchor=\"middle\">"
      << (o.log_x ? "1e" + tick(a) : tick(a)) << "</text>\n";
    s << "<text x=\"" << num(ml - 6) << "\" y=\"" << num(py(b) + 4) << "\" text-anchor=\"end\">"
      << (o.log_y ? "1e" + tick(b) : tick(b)) << "</text>\n";
  }
  if (!o.x_label.empty()) {
    s << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(o.height - 10.0)
      << "\" text-anchor=\"middle\">" << escape(o.x_label) << "</text>\n";
  }
  if (!o.y_label.empty()) {
    s << "<text transform=\"translate(16," << num(mt + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(o.y_label) << "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& sr = series[k];
    const char* colour = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
    std::string d;
    bool pen = false;
    for (std::size_t i = 0; i < sr.x.size(); ++i) {
      double a = tx(sr.x[i]), b = ty(sr.y[i]);
      if (!std::isfinite(a) || !std::isfinite(b)) {
        pen = false;
        continue;
      }
      d += (d.empty() ? "" : " ") + std::string(pen ? "L" : "M") + num(px(a)) + " " + num(py(b));
      pen = true;
    }
    s << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"/>\n";
    double ly = mt + 14 + 16.0 * static_cast<double>(k);
    s << "<line x1=\"" << num(ml + pw - 120) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(ml + pw - 100)
      << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << num(ml + pw - 95) << "\" y=\"" << num(ly) << "\">" << escape(sr.label) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void write_svg(const std::string& path, const std::vector<PlotSeries>& series, const PlotOptions& options) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw InvalidArgument("InvalidArgument", "cannot write " + path);
  }
  f << svg_line_chart(series, options);
}

} // namespace levytype
