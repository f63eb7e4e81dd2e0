#pragma once

// Curvature optimality condition for convex minimizers of δ/λ0², and the two
// stadium equations whose common root is the optimal stadium.

#include "iso/geometry.hpp"

#include <string>
#include <utility>
#include <vector>

namespace iso {

// 8 sin θ (1 - sin θ)^2 - cos θ (π - 2θ - sin 2θ)
double eqop1(double theta);
// 4 sin θ - (3/2) sin^2 θ - 5/2 + 2 (1 - sin θ)^2 (π - 2θ) / (π - 2θ - sin 2θ)
double eqop2(double theta);

// Bracketed bisection plus Newton polish on (0.1, π/2 - 0.01), tolerance 1e-10.
double eqop1_root();
// Bisection on the same bracket, tolerance 1e-10.
double eqop2_root();

// Number of sign changes of f on `grid` equispaced points of [lo, hi].
template <class F>
int count_sign_changes(F&& f, double lo, double hi, int grid) {
  int changes = 0;
  double prev = f(lo);
  for (int i = 1; i < grid; ++i) {
    const double v = f(lo + (hi - lo) * i / (grid - 1));
    if ((v > 0.0 && prev < 0.0) || (v < 0.0 && prev > 0.0)) ++changes;
    if (v != 0.0) prev = v;
  }
  return changes;
}

// Unit circle split into arcs inside (closed containment) and outside s.
struct CirclePartition {
  std::vector<std::pair<double, double>> arcs_in;
  std::vector<std::pair<double, double>> arcs_out;
  std::vector<double> crossings;
  double length_in = 0.0;
  double length_out = 0.0;
  double cos_in = 0.0;  // ∫ cos over the arcs inside
  double sin_in = 0.0;
  double cos_out = 0.0;
  double sin_out = 0.0;
  int grazing = 0;  // samples where the circle touches ∂s without crossing
};

CirclePartition circle_partition(const Shape& s);

struct ResidualSample {
  double angle;  // polar angle of the boundary point
  Point2 point;
  double curvature;
  double predicted;
  double residual;
};

struct OptimalityReport {
  double delta = 0.0;
  double lambda0 = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  CirclePartition partition;
  std::vector<ResidualSample> samples;
  int skipped = 0;  // boundary points within 1e-3 rad of a crossing
  double max_abs_residual = 0.0;
};

// Predicted curvature at p: 1 - 3δ + 4δ(|OUT| - |IN|)/(2πλ0) ± 4δ/λ0 + μ1 x + μ2 y,
// with + outside the unit disk.
double predicted_curvature(const OptimalityReport& r, const Point2& p);

// Defined for stadia (caps only) and convex radial shapes; the shape must
// have area π and barycenter 0 to 1e-6.
OptimalityReport optimality_residual(const Shape& s, int samples = 2000);

std::string optimality_csv(const OptimalityReport& r);

}  // namespace iso
