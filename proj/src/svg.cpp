#include "qtree/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qtree::svg {

namespace {

constexpr double kLeft = 64;
constexpr double kRight = 20;
constexpr double kTop = 36;
constexpr double kBottom = 52;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

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

// Round step of roughly span/count: 1, 2 or 5 times a power of ten.
double nice_step(double span, int count) {
  const double raw = span / count;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10 * mag;
}

struct Frame {
  const Axes& axes;
  double x0, x1, y0, y1;

  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (axes.width - kLeft - kRight); }
  double py(double y) const { return axes.height - kBottom - (y - y0) / (y1 - y0) * (axes.height - kTop - kBottom); }

  void open(std::ostringstream& os) const {
    const double w = axes.width, h = axes.height;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << axes.width << "\" height=\"" << axes.height
       << "\" viewBox=\"0 0 " << axes.width << ' ' << axes.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(axes.title)
       << "</text>\n";
    os << "<text x=\"" << num(w / 2) << "\" y=\"" << num(h - 12) << "\" text-anchor=\"middle\">"
       << escape(axes.x_label) << "</text>\n";
    os << "<text x=\"16\" y=\"" << num(h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << num(h / 2)
       << ")\">" << escape(axes.y_label) << "</text>\n";
    os << "<g stroke=\"#222\" fill=\"none\"><line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(y0)) << "\" x2=\""
       << num(px(x1)) << "\" y2=\"" << num(py(y0)) << "\"/><line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(y0))
       << "\" x2=\"" << num(px(x0)) << "\" y2=\"" << num(py(y1)) << "\"/></g>\n";
    os << "<g font-size=\"11\" fill=\"#222\">\n";
    const double xs = nice_step(x1 - x0, 8);
    for (double x = std::ceil(x0 / xs) * xs; x <= x1 + 1e-9; x += xs) {
      os << "<text x=\"" << num(px(x)) << "\" y=\"" << num(py(y0) + 16) << "\" text-anchor=\"middle\">" << x
         << "</text>\n";
    }
    const double ys = nice_step(y1 - y0, 6);
    for (double y = std::ceil(y0 / ys) * ys; y <= y1 + 1e-9; y += ys) {
      os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(y) + 4) << "\" text-anchor=\"end\">" << y
         << "</text>\n";
    }
    os << "</g>\n";
  }
};

}  // namespace

std::string line_plot(const Axes& axes, std::span<const Series> series) {
  double x0 = std::numeric_limits<double>::max(), x1 = std::numeric_limits<double>::lowest();
  double y0 = x0, y1 = x1;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x0 > x1) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  y0 = std::min(y0, 0.0);
  const Frame f{axes, x0, x1, y0, y1};
  std::ostringstream os;
  f.open(os);
  for (const auto& s : series) {
    if (s.points.empty()) continue;
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-opacity=\"" << s.opacity << "\"";
    if (s.dashed) os << " stroke-dasharray=\"6 4\" stroke-width=\"2\"";
    os << " points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      os << (i ? " " : "") << num(f.px(s.points[i].first)) << ',' << num(f.py(s.points[i].second));
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string histogram(const Axes& axes, std::span<const Bar> bars, double marker) {
  double x0 = 0, x1 = 1, y1 = 1;
  if (!bars.empty()) {
    x0 = bars.front().lo;
    x1 = bars.back().hi;
    for (const auto& b : bars) y1 = std::max(y1, b.value);
  }
  const Frame f{axes, x0, x1, 0.0, y1 * 1.05};
  std::ostringstream os;
  f.open(os);
  os << "<g fill=\"#4c72b0\" stroke=\"white\">\n";
  for (const auto& b : bars) {
    if (b.value <= 0) continue;
    os << "<rect x=\"" << num(f.px(b.lo)) << "\" y=\"" << num(f.py(b.value)) << "\" width=\""
       << num(f.px(b.hi) - f.px(b.lo)) << "\" height=\"" << num(f.py(0) - f.py(b.value)) << "\"/>\n";
  }
  os << "</g>\n";
  if (marker >= x0 && marker <= x1) {
    os << "<line x1=\"" << num(f.px(marker)) << "\" y1=\"" << num(f.py(0)) << "\" x2=\"" << num(f.px(marker))
       << "\" y2=\"" << num(f.py(y1 * 1.05)) << "\" stroke=\"#d62728\" stroke-dasharray=\"6 4\" stroke-width=\"2\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace qtree::svg
