#pragma once

// Planar shape classes and the primitive measures every functional is built on.
//
// All shapes are compact subsets of the plane. Four representations are
// supported:
//   * Polygon               simple, counterclockwise vertex list
//   * RadialShape           star body  center + scale * (1 + u(theta)) * e(theta)
//   * Stadium               rectangle 2r x 2l capped by two half disks, area pi
//   * DiskSegmentComposite  pairwise disjoint disks joined by zero-area segments
//
// Perimeters are Minkowski perimeters: a segment outside every disk is counted
// twice, because its epsilon-enlargement has area ~ 2 * length * epsilon.

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace iso {

using Point2 = Eigen::Vector2d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

class Polygon {
 public:
  // Throws ValidationError unless the polygon has >= 3 distinct finite
  // vertices, is simple, and is counterclockwise (positive signed area).
  explicit Polygon(std::vector<Point2> vertices);

  static Polygon regular(int sides, double circumradius,
                         const Point2& center = Point2::Zero());
  static Polygon rectangle(const Point2& lower_left, const Point2& upper_right);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double signed_area() const;

 private:
  std::vector<Point2> vertices_;
};

// Star-shaped body about `center`. The profile u is sampled at
// theta_k = 2 pi k / M; an optional truncated Fourier series
//   u(theta) = sum_k cos_coeffs[k] cos(k theta) + sin_coeffs[k] sin(k theta)
// can be supplied instead, in which case derivatives are exact.
class RadialShape {
 public:
  explicit RadialShape(Eigen::VectorXd u_samples, const Point2& center = Point2::Zero(),
                       double scale = 1.0);

  static RadialShape from_fourier(Eigen::VectorXd cos_coeffs, Eigen::VectorXd sin_coeffs,
                                  int samples, const Point2& center = Point2::Zero(),
                                  double scale = 1.0);

  const Eigen::VectorXd& samples() const { return u_; }
  int size() const { return static_cast<int>(u_.size()); }
  double step() const { return kTwoPi / static_cast<double>(u_.size()); }
  double angle(int k) const { return step() * k; }
  const Point2& center() const { return center_; }
  double scale() const { return scale_; }

  bool has_fourier() const { return user_fourier_; }
  const Eigen::VectorXd& cos_coeffs() const { return cos_; }
  const Eigen::VectorXd& sin_coeffs() const { return sin_; }

  // u'(theta_k) at the samples (exact for Fourier input, spectral otherwise).
  Eigen::VectorXd derivative() const;
  Eigen::VectorXd second_derivative() const;

  // Trigonometric interpolant of u and its derivatives at arbitrary angles.
  double profile_at(double theta) const;
  double profile_derivative_at(double theta) const;
  double profile_second_derivative_at(double theta) const;

  // Boundary radius R(theta) = scale * (1 + u(theta)) measured from center().
  Eigen::VectorXd radii() const { return scale_ * (1.0 + u_.array()).matrix(); }
  Point2 boundary_point(int k) const;

  // Same profile, placed at a new center with a new scale.
  RadialShape placed(const Point2& center, double scale) const;

 private:
  RadialShape(Eigen::VectorXd u, Eigen::VectorXd cos_coeffs, Eigen::VectorXd sin_coeffs,
              bool user_fourier, const Point2& center, double scale);
  void validate() const;

  Eigen::VectorXd u_;
  Eigen::VectorXd cos_;
  Eigen::VectorXd sin_;
  bool user_fourier_ = false;
  Point2 center_ = Point2::Zero();
  double scale_ = 1.0;
};

// Stadium of area pi centered at the origin, long axis along x.
// Cap radius r = sin(theta), half length l = pi (1 - sin^2 theta) / (4 sin theta).
class Stadium {
 public:
  explicit Stadium(double theta);

  double theta() const { return theta_; }
  double cap_radius() const { return r_; }
  double half_length() const { return l_; }

 private:
  double theta_;
  double r_;
  double l_;
};

struct Disk {
  Point2 center;
  double radius;
};

struct Segment {
  Point2 a;
  Point2 b;
  double length() const { return (b - a).norm(); }
};

// Disks must be pairwise disjoint (closed disks may touch) and every segment
// endpoint must lie on a disk boundary or on another segment. Connectivity is
// not required; see is_connected().
class DiskSegmentComposite {
 public:
  DiskSegmentComposite(std::vector<Disk> disks, std::vector<Segment> segments);

  static DiskSegmentComposite disk(const Point2& center, double radius);

  const std::vector<Disk>& disks() const { return disks_; }
  const std::vector<Segment>& segments() const { return segments_; }
  bool is_connected() const;

 private:
  std::vector<Disk> disks_;
  std::vector<Segment> segments_;
};

using Shape = std::variant<Polygon, RadialShape, Stadium, DiskSegmentComposite>;

// Circular arc, counterclockwise from `start` through `sweep` radians.
struct Arc {
  Point2 center;
  double radius;
  double start;
  double sweep;
  Point2 point(double phi) const {
    return center + radius * Point2(std::cos(phi), std::sin(phi));
  }
};

// Boundary made of straight and circular pieces. For polygons and stadia the
// pieces form a closed counterclockwise curve; radial shapes use their
// sample polyline; composites list disk circles plus the hair segments.
struct Boundary {
  std::vector<Segment> segments;
  std::vector<Arc> arcs;
};

struct BoundingBox {
  Point2 lo;
  Point2 hi;
  double width() const { return hi.x() - lo.x(); }
  double height() const { return hi.y() - lo.y(); }
};

// Primitive measures.
double area(const Shape& s);
Point2 barycenter(const Shape& s);
double perimeter_minkowski(const Shape& s);
double diameter(const Shape& s);

// Raster estimate of (|s^eps| - |s|)/eps for each eps (cell size eps/20),
// extrapolated linearly to eps = 0. `eps_list` must be strictly decreasing
// and positive.
double perimeter_epsilon_estimate(const Shape& s, std::span<const double> eps_list);

// Hausdorff distance between the two compact sets (not only their boundaries).
double hausdorff_distance(const Shape& a, const Shape& b);

// Scaled to area pi, barycenter moved to the origin.
Shape normalize(const Shape& s);

// Closed containment. Radial shapes use their sample polyline.
bool contains(const Shape& s, const Point2& p);

// Negative inside, positive outside, Euclidean distance to the boundary in
// magnitude (radial shapes: distance to the sample polyline).
double signed_distance(const Shape& s, const Point2& p);

Boundary boundary_of(const Shape& s);
BoundingBox bounding_box(const Shape& s);

// Points along every boundary piece spaced at most `step` apart.
std::vector<Point2> boundary_samples(const Shape& s, double step);

// Diameter of a finite point set (convex hull + rotating calipers).
double point_set_diameter(std::span<const Point2> points);
std::vector<Point2> convex_hull(std::vector<Point2> points);

double distance_to_segment(const Point2& p, const Segment& seg);
double distance_to_arc(const Point2& p, const Arc& arc);

}  // namespace iso
