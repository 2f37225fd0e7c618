#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qtree::svg {

struct Series {
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  double opacity = 0.35;
  bool dashed = false;
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 720;
  int height = 440;
};

/// Polylines on shared axes; the range covers every series.
std::string line_plot(const Axes& axes, std::span<const Series> series);

struct Bar {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
};

std::string histogram(const Axes& axes, std::span<const Bar> bars, double marker = -1.0);

}  // namespace qtree::svg
