#pragma once

// Explicit shape families: stadia, the dumbbell, the disconnected two-disk
// sequence, and nearly spherical radial perturbations.

#include "iso/geometry.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace iso {

struct ScanRecord {
  double parameter = 0.0;
  double delta = 0.0;
  double lambda0 = 0.0;
  double lambda = 0.0;  // NaN when not computed
  double ratio = 0.0;   // delta / lambda0^2
};

// Closed forms for Stadium(theta), 0 < theta <= pi/2. The circle of the
// barycentric disk crosses the flat sides when tan(theta) <= pi/4 and the caps
// otherwise; both regimes are exact. lambda is set equal to lambda0.
ScanRecord stadium_profile(double theta);

// Same record computed by the geometric pipeline on the Stadium shape.
ScanRecord stadium_geometric(double theta);

// Two disks of area pi/2 centered at (±(1 + 1/sqrt 2), 0) joined by the
// segment from (-1, 0) to (1, 0).
DiskSegmentComposite dumbbell_shape();
ScanRecord dumbbell_report();

struct Counterexample {
  DiskSegmentComposite shape;
  ScanRecord record;
};

// Disks of radius 1 - 1/n at (2, 0) and sqrt(2n - 1)/n at
// (-2 (n-1)^2 / (2n - 1), 0). The record is computed geometrically.
Counterexample fuglede_counterexample(int n);

// Radii and centers of the two disks, exposed for closed-form checks.
struct CounterexampleDisks {
  double big_radius;
  double big_center;
  double small_radius;
  double small_center;
};
CounterexampleDisks counterexample_disks(int n);

struct NlResiduals {
  double area = 0.0;  // (1/2pi) ∫ (1+u)^2 - 1
  double cos_moment = 0.0;  // ∫ cos(θ) (1+u)^3
  double sin_moment = 0.0;  // ∫ sin(θ) (1+u)^3
  double max_abs() const;
};

NlResiduals nl_residuals(const Eigen::VectorXd& u);

// With `project`, rescales and translates the profile (Newton on the three
// constraints, tolerance 1e-10) so that area is pi and the barycenter is the
// center. Throws ProjectionError on failure.
RadialShape nearly_spherical(const RadialShape& raw, bool project = true);

// Discrete convexity test: R^2 + 2 R'^2 - R R'' > 0 at every sample.
bool is_convex_radial(const RadialShape& s);

enum class Family { Stadium, Counterexample };

// Uniform sweep of `steps` parameter values on [lo, hi]. Counterexample
// parameters are rounded to integers and deduplicated.
std::vector<ScanRecord> scan(Family family, double lo, double hi, int steps,
                             bool geometric = false);

std::string scan_csv(const std::vector<ScanRecord>& rows);

// Seeded generators for property suites.
Polygon random_convex_polygon(std::mt19937_64& rng, int points = 40);
RadialShape random_convex_radial(std::mt19937_64& rng, double max_amplitude = 0.1,
                                 int samples = 1024);
DiskSegmentComposite random_composite(std::mt19937_64& rng);

struct ConjectureReport {
  int shapes = 0;
  double min_ratio = 0.0;
  std::string argmin;
};

// Min of delta/lambda0^2 over projected convex nearly spherical shapes and
// area-normalized random convex polygons.
ConjectureReport conjecture_scan(std::uint64_t seed, int radial_count = 1000,
                                 int polygon_count = 200);

}  // namespace iso
