#pragma once

#include <string>
#include <vector>

namespace gmdkp::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  /// Optional symmetric error bars; empty or same length as y.
  std::vector<double> err;
  /// Draw as a plain line without markers (used for theory curves).
  bool line_only = false;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
  /// Free-form lines printed under the legend (e.g. fitted slopes).
  std::vector<std::string> notes;
};

/// Static SVG document, 640x420, linear or log10 axes with "nice" ticks.
std::string render(const Plot& plot);

}  // namespace gmdkp::svg
