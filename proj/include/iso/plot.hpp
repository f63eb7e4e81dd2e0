#pragma once

// Minimal hand-written SVG: polylines on linear axes, and shape outlines.

#include "iso/geometry.hpp"

#include <string>
#include <vector>

namespace iso {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // scatter instead of a polyline
};

std::string svg_plot(const std::vector<Series>& series, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel);

// Boundary of s and the unit circle, equal aspect ratio.
std::string svg_shape(const Shape& s);

}  // namespace iso
