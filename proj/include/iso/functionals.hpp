#pragma once

// Isoperimetric deficit, barycentric and Fraenkel asymmetry.

#include "iso/geometry.hpp"

#include <string>

namespace iso {

// (P - 2 sqrt(pi |s|)) / (2 sqrt(pi |s|)) with the Minkowski perimeter.
double deficit(const Shape& s);

// |s \ B(c, r)| + |B(c, r) \ s|. Exact for polygons, stadia and composites;
// radial shapes use angular quadrature on their sample grid.
double symmetric_difference_with_disk(const Shape& s, const Point2& c, double r);

// |s ∩ B(c, r)|, same methods as above.
double intersection_with_disk(const Shape& s, const Point2& c, double r);

double barycentric_asymmetry(const Shape& s);

struct FraenkelResult {
  double value = 0.0;
  Point2 center = Point2::Zero();
  bool converged = false;
};

// Grid search (step diam/50) over the bounding box, then simplex refinement
// to position tolerance 1e-6. Never exceeds barycentric_asymmetry(s).
FraenkelResult fraenkel_asymmetry(const Shape& s);

// |B(0,1) Δ B(a e1, 1)| for 0 <= a <= 2.
double two_ball_l1_distance(double a);

// Area of the intersection of two disks.
double lens_area(double r1, double r2, double d);

struct FunctionalsReport {
  double area = 0.0;
  double perimeter = 0.0;
  Point2 barycenter = Point2::Zero();
  double delta = 0.0;
  double lambda0 = 0.0;
  double lambda = 0.0;
  Point2 lambda_center = Point2::Zero();
  bool lambda_converged = false;
  double diameter = 0.0;
  double ratio_lambda0 = 0.0;
  double ratio_lambda = 0.0;
};

// `with_fraenkel = false` skips the optimizer; lambda and ratio_lambda are NaN.
FunctionalsReport evaluate(const Shape& s, bool with_fraenkel = true);

std::string report_csv_header();
std::string report_csv_row(const FunctionalsReport& r);
std::string report_json(const FunctionalsReport& r);

}  // namespace iso
