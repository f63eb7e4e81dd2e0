#include "iso/geometry.hpp"

#include "iso/errors.hpp"
#include "iso/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace iso {

namespace {

double cross(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

double orient(const Point2& a, const Point2& b, const Point2& c) { return cross(b - a, c - a); }

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool segments_intersect(const Point2& p1, const Point2& p2, const Point2& q1, const Point2& q2) {
  const int d1 = sign_of(orient(q1, q2, p1));
  const int d2 = sign_of(orient(q1, q2, p2));
  const int d3 = sign_of(orient(p1, p2, q1));
  const int d4 = sign_of(orient(p1, p2, q2));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

bool finite(const Point2& p) { return std::isfinite(p.x()) && std::isfinite(p.y()); }

double wrap_angle(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

bool polygon_contains(const std::vector<Point2>& v, const Point2& p) {
  // Crossing number; boundary points count as inside.
  bool inside = false;
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = v[j];
    const Point2& b = v[i];
    if (std::abs(orient(a, b, p)) <= 1e-14 * std::max(1.0, (b - a).squaredNorm()) &&
        on_segment(a, b, p)) {
      return true;
    }
    if ((b.y() > p.y()) != (a.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

// Radius of the sample polyline of a radial shape along direction phi.
double polyline_radius(const RadialShape& r, double phi) {
  const int m = r.size();
  const double h = r.step();
  const double t = wrap_angle(phi);
  int k = static_cast<int>(std::floor(t / h));
  if (k >= m) k = m - 1;
  const int k1 = (k + 1) % m;
  const Eigen::VectorXd& u = r.samples();
  const double s = r.scale();
  const Point2 a = s * (1.0 + u[k]) * Point2(std::cos(h * k), std::sin(h * k));
  const Point2 b = s * (1.0 + u[k1]) * Point2(std::cos(h * k1), std::sin(h * k1));
  const Point2 e(std::cos(t), std::sin(t));
  return cross(a, b) / cross(e, b - a);
}

struct SignedDistanceVisitor {
  Point2 p;

  double operator()(const Polygon& poly) const {
    const auto& v = poly.vertices();
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
      d = std::min(d, distance_to_segment(p, {v[i], v[(i + 1) % v.size()]}));
    }
    return polygon_contains(v, p) ? -d : d;
  }

  double operator()(const RadialShape& r) const {
    double d = std::numeric_limits<double>::infinity();
    const int m = r.size();
    Point2 prev = r.boundary_point(m - 1);
    for (int k = 0; k < m; ++k) {
      const Point2 cur = r.boundary_point(k);
      d = std::min(d, distance_to_segment(p, {prev, cur}));
      prev = cur;
    }
    const Point2 rel = p - r.center();
    const bool inside = rel.norm() <= polyline_radius(r, std::atan2(rel.y(), rel.x()));
    return inside ? -d : d;
  }

  double operator()(const Stadium& st) const {
    const Segment core{Point2(-st.half_length(), 0.0), Point2(st.half_length(), 0.0)};
    return distance_to_segment(p, core) - st.cap_radius();
  }

  double operator()(const DiskSegmentComposite& c) const {
    double d = std::numeric_limits<double>::infinity();
    for (const Disk& disk : c.disks()) d = std::min(d, (p - disk.center).norm() - disk.radius);
    for (const Segment& seg : c.segments()) d = std::min(d, distance_to_segment(p, seg));
    return d;
  }
};

struct ContainsVisitor {
  Point2 p;
  bool operator()(const Polygon& poly) const { return polygon_contains(poly.vertices(), p); }
  bool operator()(const RadialShape& r) const {
    const Point2 rel = p - r.center();
    return rel.norm() <= polyline_radius(r, std::atan2(rel.y(), rel.x()));
  }
  bool operator()(const Stadium& st) const { return SignedDistanceVisitor{p}(st) <= 0.0; }
  bool operator()(const DiskSegmentComposite& c) const {
    for (const Disk& disk : c.disks()) {
      if ((p - disk.center).norm() <= disk.radius) return true;
    }
    for (const Segment& seg : c.segments()) {
      if (distance_to_segment(p, seg) <= 1e-12 * std::max(1.0, seg.length())) return true;
    }
    return false;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Polygon

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw ValidationError("polygon needs at least 3 vertices");
  for (const Point2& p : vertices_) {
    if (!finite(p)) throw ValidationError("polygon vertex is not finite");
  }
  std::vector<Point2> sorted = vertices_;
  std::sort(sorted.begin(), sorted.end(), [](const Point2& a, const Point2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  for (std::size_t i = 1; i < n; ++i) {
    if (sorted[i] == sorted[i - 1]) throw ValidationError("polygon has repeated vertices");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = vertices_[i];
    const Point2& b = vertices_[(i + 1) % n];
    const Point2& c = vertices_[(i + 2) % n];
    if (orient(a, b, c) == 0.0 && (b - a).dot(c - b) < 0.0) {
      throw ValidationError("polygon folds back on itself");
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      if (segments_intersect(a, b, vertices_[j], vertices_[(j + 1) % n])) {
        throw ValidationError("polygon is not simple");
      }
    }
  }
  if (!(signed_area() > 0.0)) throw ValidationError("polygon must be counterclockwise");
}

double Polygon::signed_area() const {
  double a = 0.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(vertices_[i], vertices_[(i + 1) % n]);
  return 0.5 * a;
}

Polygon Polygon::regular(int sides, double circumradius, const Point2& center) {
  std::vector<Point2> v;
  v.reserve(static_cast<std::size_t>(sides));
  for (int k = 0; k < sides; ++k) {
    const double t = kTwoPi * k / sides;
    v.emplace_back(center + circumradius * Point2(std::cos(t), std::sin(t)));
  }
  return Polygon(std::move(v));
}

Polygon Polygon::rectangle(const Point2& lo, const Point2& hi) {
  return Polygon({lo, Point2(hi.x(), lo.y()), hi, Point2(lo.x(), hi.y())});
}

// ---------------------------------------------------------------------------
// RadialShape

RadialShape::RadialShape(Eigen::VectorXd u_samples, const Point2& center, double scale)
    : u_(std::move(u_samples)), center_(center), scale_(scale) {
  validate();
  spectral::coefficients(u_, cos_, sin_);
}

RadialShape::RadialShape(Eigen::VectorXd u, Eigen::VectorXd cos_coeffs,
                         Eigen::VectorXd sin_coeffs, bool user_fourier, const Point2& center,
                         double scale)
    : u_(std::move(u)),
      cos_(std::move(cos_coeffs)),
      sin_(std::move(sin_coeffs)),
      user_fourier_(user_fourier),
      center_(center),
      scale_(scale) {
  validate();
}

RadialShape RadialShape::from_fourier(Eigen::VectorXd cos_coeffs, Eigen::VectorXd sin_coeffs,
                                      int samples, const Point2& center, double scale) {
  if (cos_coeffs.size() != sin_coeffs.size() || cos_coeffs.size() == 0) {
    throw ValidationError("fourier cosine and sine lists must have the same nonzero length");
  }
  if (samples < 16 || samples % 2 != 0) {
    throw ValidationError("radial sample count must be even and >= 16");
  }
  if (2 * (cos_coeffs.size() - 1) >= samples) {
    throw ValidationError("fourier series has too many harmonics for the sample grid");
  }
  sin_coeffs[0] = 0.0;
  Eigen::VectorXd u = spectral::synthesize(cos_coeffs, sin_coeffs, samples);
  return RadialShape(std::move(u), std::move(cos_coeffs), std::move(sin_coeffs), true, center,
                     scale);
}

void RadialShape::validate() const {
  const auto m = u_.size();
  if (m < 16 || m % 2 != 0) throw ValidationError("radial sample count must be even and >= 16");
  if (!u_.allFinite()) throw ValidationError("radial profile is not finite");
  if ((1.0 + u_.array()).minCoeff() <= 0.0) {
    throw ValidationError("radial profile must satisfy 1 + u > 0");
  }
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw ValidationError("radial scale must be > 0");
  if (!finite(center_)) throw ValidationError("radial center is not finite");
}

Eigen::VectorXd RadialShape::derivative() const {
  return spectral::synthesize(cos_, sin_, size(), 1);
}

Eigen::VectorXd RadialShape::second_derivative() const {
  return spectral::synthesize(cos_, sin_, size(), 2);
}

double RadialShape::profile_at(double theta) const { return spectral::evaluate(cos_, sin_, theta); }

double RadialShape::profile_derivative_at(double theta) const {
  return spectral::evaluate(cos_, sin_, theta, 1);
}

double RadialShape::profile_second_derivative_at(double theta) const {
  return spectral::evaluate(cos_, sin_, theta, 2);
}

Point2 RadialShape::boundary_point(int k) const {
  const double t = angle(k);
  return center_ + scale_ * (1.0 + u_[k]) * Point2(std::cos(t), std::sin(t));
}

RadialShape RadialShape::placed(const Point2& center, double scale) const {
  return RadialShape(u_, cos_, sin_, user_fourier_, center, scale);
}

// ---------------------------------------------------------------------------
// Stadium

Stadium::Stadium(double theta) : theta_(theta) {
  if (!std::isfinite(theta) || !(theta > 0.0) || theta > 0.5 * kPi + 1e-15) {
    throw ValidationError("stadium theta must lie in (0, pi/2]");
  }
  r_ = std::sin(theta);
  l_ = kPi * (1.0 - r_ * r_) / (4.0 * r_);
  if (l_ < 0.0) l_ = 0.0;
}

// ---------------------------------------------------------------------------
// DiskSegmentComposite

DiskSegmentComposite::DiskSegmentComposite(std::vector<Disk> disks, std::vector<Segment> segments)
    : disks_(std::move(disks)), segments_(std::move(segments)) {
  if (disks_.empty()) throw ValidationError("composite needs at least one disk");
  for (const Disk& d : disks_) {
    if (!finite(d.center) || !(d.radius > 0.0) || !std::isfinite(d.radius)) {
      throw ValidationError("composite disk needs a finite center and positive radius");
    }
  }
  for (std::size_t i = 0; i < disks_.size(); ++i) {
    for (std::size_t j = i + 1; j < disks_.size(); ++j) {
      const double gap = (disks_[i].center - disks_[j].center).norm() -
                         (disks_[i].radius + disks_[j].radius);
      if (gap < -1e-12) throw ValidationError("composite disks must be pairwise disjoint");
    }
  }
  auto anchored = [this](const Point2& p, std::size_t self) {
    for (const Disk& d : disks_) {
      if (std::abs((p - d.center).norm() - d.radius) <= 1e-9 * std::max(1.0, d.radius)) return true;
    }
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      if (k != self && distance_to_segment(p, segments_[k]) <= 1e-9) return true;
    }
    return false;
  };
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const Segment& s = segments_[k];
    if (!finite(s.a) || !finite(s.b) || !(s.length() > 0.0)) {
      throw ValidationError("composite segment must have positive finite length");
    }
    if (!anchored(s.a, k) || !anchored(s.b, k)) {
      throw ValidationError("composite segment endpoint is not on a disk boundary or segment");
    }
  }
}

DiskSegmentComposite DiskSegmentComposite::disk(const Point2& center, double radius) {
  return DiskSegmentComposite({Disk{center, radius}}, {});
}

bool DiskSegmentComposite::is_connected() const {
  const std::size_t nd = disks_.size();
  const std::size_t n = nd + segments_.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
  for (std::size_t i = 0; i < nd; ++i) {
    for (std::size_t j = i + 1; j < nd; ++j) {
      const double gap =
          (disks_[i].center - disks_[j].center).norm() - (disks_[i].radius + disks_[j].radius);
      if (gap <= 1e-12) unite(i, j);
    }
  }
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const Segment& s = segments_[k];
    for (std::size_t i = 0; i < nd; ++i) {
      const Disk& d = disks_[i];
      if (distance_to_segment(d.center, s) <= d.radius + 1e-9) unite(nd + k, i);
    }
    for (std::size_t j = k + 1; j < segments_.size(); ++j) {
      if (segments_intersect(s.a, s.b, segments_[j].a, segments_[j].b) ||
          distance_to_segment(s.a, segments_[j]) <= 1e-9 ||
          distance_to_segment(s.b, segments_[j]) <= 1e-9) {
        unite(nd + k, nd + j);
      }
    }
  }
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < n; ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Distances, boundaries, boxes

double distance_to_segment(const Point2& p, const Segment& seg) {
  const Point2 d = seg.b - seg.a;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (p - seg.a).norm();
  const double t = std::clamp((p - seg.a).dot(d) / len2, 0.0, 1.0);
  return (p - (seg.a + t * d)).norm();
}

double distance_to_arc(const Point2& p, const Arc& arc) {
  const Point2 rel = p - arc.center;
  const double rho = rel.norm();
  if (rho > 0.0) {
    const double rel_angle = wrap_angle(std::atan2(rel.y(), rel.x()) - arc.start);
    if (rel_angle <= arc.sweep) return std::abs(rho - arc.radius);
  } else if (arc.sweep >= kTwoPi) {
    return arc.radius;
  }
  const double d0 = (p - arc.point(arc.start)).norm();
  const double d1 = (p - arc.point(arc.start + arc.sweep)).norm();
  return std::min(d0, d1);
}

Boundary boundary_of(const Shape& s) {
  Boundary b;
  std::visit(
      [&b](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          const auto& v = shape.vertices();
          for (std::size_t i = 0; i < v.size(); ++i) b.segments.push_back({v[i], v[(i + 1) % v.size()]});
        } else if constexpr (std::is_same_v<T, RadialShape>) {
          const int m = shape.size();
          for (int k = 0; k < m; ++k) {
            b.segments.push_back({shape.boundary_point(k), shape.boundary_point((k + 1) % m)});
          }
        } else if constexpr (std::is_same_v<T, Stadium>) {
          const double r = shape.cap_radius();
          const double l = shape.half_length();
          if (l > 0.0) {
            b.segments.push_back({Point2(-l, -r), Point2(l, -r)});
            b.segments.push_back({Point2(l, r), Point2(-l, r)});
          }
          b.arcs.push_back({Point2(l, 0.0), r, -0.5 * kPi, kPi});
          b.arcs.push_back({Point2(-l, 0.0), r, 0.5 * kPi, kPi});
        } else {
          for (const Disk& d : shape.disks()) b.arcs.push_back({d.center, d.radius, 0.0, kTwoPi});
          for (const Segment& seg : shape.segments()) b.segments.push_back(seg);
        }
      },
      s);
  return b;
}

BoundingBox bounding_box(const Shape& s) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  BoundingBox box{Point2(inf, inf), Point2(-inf, -inf)};
  auto grow = [&box](const Point2& p) {
    box.lo = box.lo.cwiseMin(p);
    box.hi = box.hi.cwiseMax(p);
  };
  const Boundary b = boundary_of(s);
  for (const Segment& seg : b.segments) {
    grow(seg.a);
    grow(seg.b);
  }
  for (const Arc& arc : b.arcs) {
    // Conservative for partial arcs: use the full circle box.
    grow(arc.center - Point2::Constant(arc.radius));
    grow(arc.center + Point2::Constant(arc.radius));
  }
  return box;
}

std::vector<Point2> boundary_samples(const Shape& s, double step) {
  std::vector<Point2> pts;
  const Boundary b = boundary_of(s);
  for (const Segment& seg : b.segments) {
    const int n = std::max(1, static_cast<int>(std::ceil(seg.length() / step)));
    for (int i = 0; i <= n; ++i) {
      pts.push_back(seg.a + (seg.b - seg.a) * (static_cast<double>(i) / n));
    }
  }
  for (const Arc& arc : b.arcs) {
    const int n = std::max(4, static_cast<int>(std::ceil(arc.radius * arc.sweep / step)));
    for (int i = 0; i <= n; ++i) pts.push_back(arc.point(arc.start + arc.sweep * i / n));
  }
  return pts;
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double point_set_diameter(std::span<const Point2> points) {
  const std::vector<Point2> h = convex_hull({points.begin(), points.end()});
  const std::size_t n = h.size();
  if (n < 2) return 0.0;
  if (n == 2) return (h[0] - h[1]).norm();
  double best = 0.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ni = (i + 1) % n;
    while (std::abs(orient(h[i], h[ni], h[(j + 1) % n])) > std::abs(orient(h[i], h[ni], h[j]))) {
      j = (j + 1) % n;
    }
    best = std::max({best, (h[i] - h[j]).norm(), (h[ni] - h[j]).norm()});
  }
  return best;
}

// ---------------------------------------------------------------------------
// Measures

double area(const Shape& s) {
  return std::visit(
      [](const auto& shape) -> double {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          return shape.signed_area();
        } else if constexpr (std::is_same_v<T, RadialShape>) {
          return 0.5 * spectral::periodic_integral(shape.radii().array().square().matrix());
        } else if constexpr (std::is_same_v<T, Stadium>) {
          return kPi;
        } else {
          double a = 0.0;
          for (const Disk& d : shape.disks()) a += kPi * d.radius * d.radius;
          return a;
        }
      },
      s);
}

Point2 barycenter(const Shape& s) {
  const double a = area(s);
  if (!(a > 0.0)) throw DegenerateShapeError("barycenter of a zero-area shape");
  return std::visit(
      [a](const auto& shape) -> Point2 {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          const auto& v = shape.vertices();
          Point2 c = Point2::Zero();
          for (std::size_t i = 0; i < v.size(); ++i) {
            const Point2& p = v[i];
            const Point2& q = v[(i + 1) % v.size()];
            c += (p + q) * cross(p, q);
          }
          return c / (6.0 * a);
        } else if constexpr (std::is_same_v<T, RadialShape>) {
          const Eigen::VectorXd r3 = shape.radii().array().cube().matrix() / 3.0;
          const int m = shape.size();
          Eigen::VectorXd cx(m), cy(m);
          for (int k = 0; k < m; ++k) {
            cx[k] = r3[k] * std::cos(shape.angle(k));
            cy[k] = r3[k] * std::sin(shape.angle(k));
          }
          return shape.center() +
                 Point2(spectral::periodic_integral(cx), spectral::periodic_integral(cy)) / a;
        } else if constexpr (std::is_same_v<T, Stadium>) {
          return Point2::Zero();
        } else {
          Point2 c = Point2::Zero();
          for (const Disk& d : shape.disks()) c += kPi * d.radius * d.radius * d.center;
          return c / a;
        }
      },
      s);
}

double perimeter_minkowski(const Shape& s) {
  return std::visit(
      [](const auto& shape) -> double {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          const auto& v = shape.vertices();
          double p = 0.0;
          for (std::size_t i = 0; i < v.size(); ++i) p += (v[(i + 1) % v.size()] - v[i]).norm();
          return p;
        } else if constexpr (std::is_same_v<T, RadialShape>) {
          const Eigen::VectorXd r = shape.radii();
          const Eigen::VectorXd dr = shape.scale() * shape.derivative();
          return spectral::periodic_integral((r.array().square() + dr.array().square()).sqrt().matrix());
        } else if constexpr (std::is_same_v<T, Stadium>) {
          return 4.0 * shape.half_length() + kTwoPi * shape.cap_radius();
        } else {
          double p = 0.0;
          for (const Disk& d : shape.disks()) p += kTwoPi * d.radius;
          for (const Segment& seg : shape.segments()) p += 2.0 * seg.length();
          return p;
        }
      },
      s);
}

double diameter(const Shape& s) {
  return std::visit(
      [](const auto& shape) -> double {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          return point_set_diameter(shape.vertices());
        } else if constexpr (std::is_same_v<T, RadialShape>) {
          std::vector<Point2> pts;
          pts.reserve(static_cast<std::size_t>(shape.size()));
          for (int k = 0; k < shape.size(); ++k) pts.push_back(shape.boundary_point(k));
          return point_set_diameter(pts);
        } else if constexpr (std::is_same_v<T, Stadium>) {
          return 2.0 * (shape.half_length() + shape.cap_radius());
        } else {
          double best = 0.0;
          const auto& disks = shape.disks();
          for (std::size_t i = 0; i < disks.size(); ++i) {
            for (std::size_t j = i; j < disks.size(); ++j) {
              best = std::max(best, (disks[i].center - disks[j].center).norm() + disks[i].radius +
                                        disks[j].radius);
            }
          }
          std::vector<Point2> ends;
          for (const Segment& seg : shape.segments()) {
            ends.push_back(seg.a);
            ends.push_back(seg.b);
          }
          for (const Point2& p : ends) {
            for (const Disk& d : disks) best = std::max(best, (p - d.center).norm() + d.radius);
            for (const Point2& q : ends) best = std::max(best, (p - q).norm());
          }
          return best;
        }
      },
      s);
}

bool contains(const Shape& s, const Point2& p) { return std::visit(ContainsVisitor{p}, s); }

double signed_distance(const Shape& s, const Point2& p) {
  return std::visit(SignedDistanceVisitor{p}, s);
}

double perimeter_epsilon_estimate(const Shape& s, std::span<const double> eps_list) {
  if (eps_list.empty()) throw ValidationError("eps list is empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw ValidationError("eps values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw ValidationError("eps list must be strictly decreasing");
    }
  }
  constexpr double kMaxCells = 6.0e7;
  const Boundary boundary = boundary_of(s);
  const BoundingBox box = bounding_box(s);

  std::vector<double> estimates;
  for (double eps : eps_list) {
    const double cell = eps / 20.0;
    const Point2 lo = box.lo - Point2::Constant(eps + 2.0 * cell);
    const Point2 hi = box.hi + Point2::Constant(eps + 2.0 * cell);
    const double nxd = std::ceil((hi.x() - lo.x()) / cell);
    const double nyd = std::ceil((hi.y() - lo.y()) / cell);
    if (nxd * nyd > kMaxCells) {
      throw ResolutionError("raster for eps = " + std::to_string(eps) + " needs " +
                            std::to_string(nxd * nyd) + " cells");
    }
    const auto nx = static_cast<long>(nxd);
    const auto ny = static_cast<long>(nyd);
    std::vector<std::uint8_t> mark(static_cast<std::size_t>(nx * ny), 0);
    auto center_of = [&](long i, long j) {
      return Point2(lo.x() + (static_cast<double>(i) + 0.5) * cell,
                    lo.y() + (static_cast<double>(j) + 0.5) * cell);
    };
    auto visit_box = [&](Point2 blo, Point2 bhi, auto&& near) {
      const long i0 = std::max(0L, static_cast<long>(std::floor((blo.x() - eps - lo.x()) / cell)));
      const long i1 = std::min(nx - 1, static_cast<long>(std::ceil((bhi.x() + eps - lo.x()) / cell)));
      const long j0 = std::max(0L, static_cast<long>(std::floor((blo.y() - eps - lo.y()) / cell)));
      const long j1 = std::min(ny - 1, static_cast<long>(std::ceil((bhi.y() + eps - lo.y()) / cell)));
      for (long j = j0; j <= j1; ++j) {
        for (long i = i0; i <= i1; ++i) {
          auto& m = mark[static_cast<std::size_t>(j * nx + i)];
          if (!m && near(center_of(i, j))) m = 1;
        }
      }
    };
    for (const Segment& seg : boundary.segments) {
      visit_box(seg.a.cwiseMin(seg.b), seg.a.cwiseMax(seg.b),
                [&](const Point2& p) { return distance_to_segment(p, seg) <= eps; });
    }
    for (const Arc& arc : boundary.arcs) {
      visit_box(arc.center - Point2::Constant(arc.radius), arc.center + Point2::Constant(arc.radius),
                [&](const Point2& p) {
                  if (std::abs((p - arc.center).norm() - arc.radius) > eps) return false;
                  return distance_to_arc(p, arc) <= eps;
                });
    }
    long outside = 0;
    for (long j = 0; j < ny; ++j) {
      for (long i = 0; i < nx; ++i) {
        if (mark[static_cast<std::size_t>(j * nx + i)] && !contains(s, center_of(i, j))) ++outside;
      }
    }
    estimates.push_back(static_cast<double>(outside) * cell * cell / eps);
  }
  if (estimates.size() == 1) return estimates.front();

  // Least-squares line est = P + c * eps; P is the eps -> 0 limit.
  const auto n = static_cast<Eigen::Index>(estimates.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = eps_list[static_cast<std::size_t>(i)];
    y[i] = estimates[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(y);
  return coef[0];
}

double hausdorff_distance(const Shape& a, const Shape& b) {
  const double diam = std::max(diameter(a), diameter(b));
  const double step = diam / 2000.0;
  auto cloud = [step, diam](const Shape& s) {
    std::vector<Point2> pts = boundary_samples(s, step);
    const BoundingBox box = bounding_box(s);
    const double g = diam / 100.0;
    for (double y = box.lo.y() + 0.5 * g; y < box.hi.y(); y += g) {
      for (double x = box.lo.x() + 0.5 * g; x < box.hi.x(); x += g) {
        const Point2 p(x, y);
        if (contains(s, p)) pts.push_back(p);
      }
    }
    return pts;
  };
  auto one_sided = [](const std::vector<Point2>& from, const Shape& to) {
    double worst = 0.0;
    for (const Point2& p : from) {
      if (contains(to, p)) continue;
      worst = std::max(worst, signed_distance(to, p));
    }
    return worst;
  };
  return std::max(one_sided(cloud(a), b), one_sided(cloud(b), a));
}

Shape normalize(const Shape& s) {
  const double a = area(s);
  if (!(a > 0.0)) throw DegenerateShapeError("cannot normalize a zero-area shape");
  const double k = std::sqrt(kPi / a);
  const Point2 g = barycenter(s);
  auto map = [k, &g](const Point2& p) -> Point2 { return k * (p - g); };
  return std::visit(
      [&](const auto& shape) -> Shape {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          std::vector<Point2> v;
          v.reserve(shape.size());
          for (const Point2& p : shape.vertices()) v.push_back(map(p));
          return Polygon(std::move(v));
        } else if constexpr (std::is_same_v<T, RadialShape>) {
          return shape.placed(map(shape.center()), k * shape.scale());
        } else if constexpr (std::is_same_v<T, Stadium>) {
          return shape;
        } else {
          std::vector<Disk> disks;
          std::vector<Segment> segs;
          for (const Disk& d : shape.disks()) disks.push_back({map(d.center), k * d.radius});
          for (const Segment& seg : shape.segments()) segs.push_back({map(seg.a), map(seg.b)});
          return DiskSegmentComposite(std::move(disks), std::move(segs));
        }
      },
      s);
}

}  // namespace iso
