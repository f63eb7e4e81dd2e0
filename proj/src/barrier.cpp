#include "iso/barrier.hpp"

#include "iso/geometry.hpp"
#include "iso/roots.hpp"
#include "iso/variational.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace iso {

namespace {

constexpr BarrierNodes kNodes{};
constexpr double kVertex2 = kNodes.x2 + 0.5 * kNodes.x3;  // minimum of r2

double h(double x) { return kernel_H(x); }

double r5(double x) {
  const double x5 = kNodes.x5;
  return h(kNodes.x1) * (x - kTwoPi + x5) * (x - x5) / ((kPi - kTwoPi + x5) * (kPi - x5));
}
double r1(double x) { return r5(kPi) / (kNodes.x1 - kNodes.x2) * (x - kNodes.x2); }
double r2(double x) { return (x - kNodes.x2) * (x - (kNodes.x2 + kNodes.x3)) / 4.34; }
double r3(double x) {
  return -(x - 2.15) * (x - (kNodes.x3 - 0.85)) * r2(1.3) / (0.85 * 0.85);
}
double r4(double x) { return r3(kNodes.x4) / (kNodes.x4 - kNodes.x5) * (x - kNodes.x5); }

// x in [lo, hi] with f(x) = t for monotone f.
template <class F>
double invert(F&& f, double t, double lo, double hi) {
  return bisect([&](double x) { return f(x) - t; }, lo, hi, 1e-15);
}

// Minimum of H on [0, π]: H' = sin x/(4π) - (1 - x/π) cos x / 2.
double h_min_point() {
  static const double xm = bisect(
      [](double x) { return std::sin(x) / (4.0 * kPi) - 0.5 * (1.0 - x / kPi) * std::cos(x); },
      1e-3, kPi - 1e-3, 1e-15);
  return xm;
}

double h_level_measure(double t) {
  const double xm = h_min_point();
  if (t >= h(0.0)) return 0.0;
  if (t <= h(xm)) return kPi;
  const double left = invert(h, t, 0.0, xm);
  if (t >= h(kPi)) return left;
  return left + kPi - invert(h, t, xm, kPi);
}

// Decreasing rearrangement from a nonincreasing level measure.
template <class Mu>
double rearranged(Mu&& mu, double x, double tmin, double tmax) {
  if (x <= 0.0) return tmax;
  if (x >= kPi) return tmin;
  double lo = tmin;
  double hi = tmax;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mu(mid) > x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double barrier_M(double x) {
  if (x <= kNodes.x1) return h(x);
  if (x <= kNodes.x2) return r1(x);
  if (x <= kNodes.x3) return r2(x);
  if (x <= kNodes.x4) return r3(x);
  if (x <= kNodes.x5) return r4(x);
  return r5(x);
}

double barrier_level_measure(double t) {
  const double x1 = kNodes.x1, x2 = kNodes.x2, x3 = kNodes.x3, x4 = kNodes.x4, x5 = kNodes.x5;
  if (t >= h(0.0)) return 0.0;
  if (t >= h(x1)) return invert(h, t, 0.0, x1);
  if (t >= 0.0) return invert(r1, t, x1, x2) + kPi - invert(r5, t, x5, kPi);
  if (t < r2(kVertex2)) return kPi;
  const double left = invert(r2, t, x2, kVertex2);
  if (t >= r4(x4)) return left + kPi - invert(r4, t, x4, x5);
  if (t >= r3(x3)) return left + kPi - invert(r3, t, x3, x4);
  // Below r3(x3) only the rising tail of r2 on [vertex, x3] is excluded.
  return left + kPi - invert(r2, t, kVertex2, x3);
}

double barrier_M_star(double x) {
  return rearranged(barrier_level_measure, x, r2(kVertex2), h(0.0));
}

double kernel_H_star(double x) { return rearranged(h_level_measure, x, h(h_min_point()), h(0.0)); }

double barrier_integral() {
  using boost::math::quadrature::gauss_kronrod;
  std::vector<double> breaks{0.0, kPi};
  for (double t : {h(kNodes.x1), 0.0, r4(kNodes.x4), r3(kNodes.x3)}) {
    breaks.push_back(barrier_level_measure(t));
  }
  std::sort(breaks.begin(), breaks.end());
  auto f = [](double x) { return (kPi - x) * barrier_M_star(x); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) {
      total += gauss_kronrod<double, 31>::integrate(f, breaks[i], breaks[i + 1], 10, 1e-12);
    }
  }
  return total;
}

double m_lower_bound() { return 1.0 / (8.0 * barrier_integral()); }

BarrierCheck barrier_check(int grid) {
  BarrierCheck c;
  c.grid = grid;
  c.min_gap = std::numeric_limits<double>::infinity();
  c.min_star_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double x = kPi * i / (grid - 1);
    c.min_gap = std::min(c.min_gap, barrier_M(x) - h(x));
    c.min_star_gap = std::min(c.min_star_gap, barrier_M_star(x) - kernel_H_star(x));
  }
  return c;
}

std::string kernel_table_csv(int rows) {
  std::string out = "x,H,M,H_star,M_star\n";
  for (int i = 0; i < rows; ++i) {
    const double x = kPi * i / (rows - 1);
    out += fmt::format("{:.10g},{:.12g},{:.12g},{:.12g},{:.12g}\n", x, h(x), barrier_M(x),
                       kernel_H_star(x), barrier_M_star(x));
  }
  return out;
}

}  // namespace iso
