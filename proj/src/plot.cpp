#include "iso/plot.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace iso {

namespace {

constexpr double kW = 640.0;
constexpr double kH = 420.0;
constexpr double kMargin = 56.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string svg_plot(const std::vector<Series>& series, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x1 > x0)) { x0 -= 0.5; x1 += 0.5; }
  if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * (kW - 2 * kMargin); };
  auto py = [&](double y) { return kH - kMargin - (y - y0) / (y1 - y0) * (kH - 2 * kMargin); };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kW, kH);
  out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kW, kH);
  out += fmt::format("<text x=\"{}\" y=\"20\" text-anchor=\"middle\">{}</text>\n", kW / 2,
                     escape(title));
  // axes box with end ticks
  out += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
      kMargin, kMargin, kW - 2 * kMargin, kH - 2 * kMargin);
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = y0 + (y1 - y0) * i / 4.0;
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.4g}</text>\n",
                       px(xv), kH - kMargin + 16, xv);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.4g}</text>\n",
                       kMargin - 4, py(yv) + 4, yv);
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", kW / 2,
                     kH - 12, escape(xlabel));
  out += fmt::format(
      "<text x=\"14\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {})\">{}</text>\n",
      kH / 2, kH / 2, escape(ylabel));

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % 5];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (s.markers) {
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"{}\"/>\n",
                           px(s.x[i]), py(s.y[i]), color);
      } else {
        pts += fmt::format("{:.2f},{:.2f} ", px(s.x[i]), py(s.y[i]));
      }
    }
    if (!pts.empty()) {
      out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" points=\"{}\"/>\n", color, pts);
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" fill=\"{}\">{}</text>\n", kW - kMargin - 120,
                       kMargin + 16 + 14 * k, color, escape(s.label));
  }
  out += "</svg>\n";
  return out;
}

std::string svg_shape(const Shape& s) {
  const auto box = bounding_box(s);
  const double lo_x = std::min(box.lo.x(), -1.0), hi_x = std::max(box.hi.x(), 1.0);
  const double lo_y = std::min(box.lo.y(), -1.0), hi_y = std::max(box.hi.y(), 1.0);
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double size = 480.0;
  const double k = (size - 40.0) / span;
  auto px = [&](double x) { return 20.0 + (x - lo_x) * k; };
  auto py = [&](double y) { return size - 20.0 - (y - lo_y) * k; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\">\n"
      "<rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n",
      size);
  out += fmt::format(
      "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"none\" stroke=\"#999\" "
      "stroke-dasharray=\"4 3\"/>\n",
      px(0.0), py(0.0), k);
  const Boundary b = boundary_of(s);
  for (const auto& seg : b.segments) {
    out += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
        px(seg.a.x()), py(seg.a.y()), px(seg.b.x()), py(seg.b.y()));
  }
  for (const auto& arc : b.arcs) {
    std::string pts;
    const int n = std::max(8, static_cast<int>(std::abs(arc.sweep) * 40));
    for (int i = 0; i <= n; ++i) {
      const Point2 p = arc.point(arc.start + arc.sweep * i / n);
      pts += fmt::format("{:.2f},{:.2f} ", px(p.x()), py(p.y()));
    }
    out += fmt::format("<polyline fill=\"none\" stroke=\"black\" points=\"{}\"/>\n", pts);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace iso
