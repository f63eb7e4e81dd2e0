#pragma once

#include "iso/errors.hpp"

#include <cmath>
#include <string>

namespace iso {

// Bisection on [lo, hi] until the bracket is shorter than `tol`.
// Throws RootBracketError when f(lo) and f(hi) share a sign.
template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw RootBracketError("no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
  }
  for (int i = 0; i < 200 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Bisection to a coarse bracket, then Newton with a central-difference slope.
// Newton steps leaving the bracket are rejected.
template <class F>
double bisect_newton(F&& f, double lo, double hi, double tol) {
  const double coarse = std::max(tol, 1e-6 * (hi - lo));
  double x = bisect(f, lo, hi, coarse);
  const double a = x - coarse;
  const double b = x + coarse;
  for (int i = 0; i < 50; ++i) {
    const double h = 1e-7 * std::max(1.0, std::abs(x));
    const double slope = (f(x + h) - f(x - h)) / (2.0 * h);
    if (slope == 0.0 || !std::isfinite(slope)) break;
    const double next = x - f(x) / slope;
    if (!(next > a && next < b)) break;
    const double dx = std::abs(next - x);
    x = next;
    if (dx < 0.1 * tol) break;
  }
  return x;
}

}  // namespace iso
