#include "iso/optimality.hpp"

#include "iso/errors.hpp"
#include "iso/functionals.hpp"
#include "iso/roots.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>

namespace iso {

namespace {

constexpr double kRootLo = 0.1;
constexpr double kRootHi = kPi / 2.0 - 0.01;
constexpr int kPartitionGrid = 4096;
constexpr double kCrossingWindow = 1e-3;

double angle_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

// Negative where e(φ) lies inside s.
std::function<double(double)> containment_function(const Shape& s) {
  if (const auto* r = std::get_if<RadialShape>(&s)) {
    return [r](double phi) {
      const Point2 q = Point2(std::cos(phi), std::sin(phi)) - r->center();
      const double psi = std::atan2(q.y(), q.x());
      return q.norm() - r->scale() * (1.0 + r->profile_at(psi));
    };
  }
  return [&s](double phi) { return signed_distance(s, Point2(std::cos(phi), std::sin(phi))); };
}

void check_normalized(const Shape& s) {
  const double a = area(s);
  const Point2 b = barycenter(s);
  if (std::abs(a - kPi) > 1e-6 || b.norm() > 1e-6) {
    throw ValidationError(
        fmt::format("shape must be normalized (area {:.9g}, barycenter ({:.3g}, {:.3g}))", a,
                    b.x(), b.y()));
  }
}

}  // namespace

double eqop1(double t) {
  const double s = std::sin(t);
  return 8.0 * s * (1.0 - s) * (1.0 - s) - std::cos(t) * (kPi - 2.0 * t - std::sin(2.0 * t));
}

double eqop2(double t) {
  const double s = std::sin(t);
  return 4.0 * s - 1.5 * s * s - 2.5 +
         2.0 * (1.0 - s) * (1.0 - s) * (kPi - 2.0 * t) / (kPi - 2.0 * t - std::sin(2.0 * t));
}

double eqop1_root() { return bisect_newton(eqop1, kRootLo, kRootHi, 1e-10); }

double eqop2_root() { return bisect(eqop2, kRootLo, kRootHi, 1e-10); }

CirclePartition circle_partition(const Shape& s) {
  const auto f = containment_function(s);
  const double graze = 1e-10;
  const int n = kPartitionGrid;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = f(kTwoPi * i / n);

  CirclePartition p;
  for (int i = 0; i < n; ++i) {
    const double a = v[i];
    const double b = v[(i + 1) % n];
    if ((a <= graze) != (b <= graze)) {
      const double lo = kTwoPi * i / n;
      const double hi = kTwoPi * (i + 1) / n;
      // bracket the true zero when noise allows, else the shifted one
      const bool clean = (a < 0.0) != (b < 0.0) && a != 0.0 && b != 0.0;
      p.crossings.push_back(clean ? bisect(f, lo, hi, 1e-14)
                                  : bisect([&](double x) { return f(x) - graze; }, lo, hi, 1e-14));
    } else if (std::abs(a) < graze && std::abs(b) >= graze) {
      ++p.grazing;
    }
  }
  // A circle that coincides with ∂s is inside, not grazing.
  if (std::all_of(v.begin(), v.end(), [&](double x) { return std::abs(x) < graze; })) {
    p.grazing = 0;
  }

  auto add = [&](double a, double b) {
    const bool inside = f(0.5 * (a + b)) <= graze;
    (inside ? p.arcs_in : p.arcs_out).emplace_back(a, b);
    const double c = std::sin(b) - std::sin(a);
    const double sn = std::cos(a) - std::cos(b);
    if (inside) {
      p.length_in += b - a;
      p.cos_in += c;
      p.sin_in += sn;
    } else {
      p.length_out += b - a;
      p.cos_out += c;
      p.sin_out += sn;
    }
  };
  if (p.crossings.empty()) {
    add(0.0, kTwoPi);
  } else {
    const auto& c = p.crossings;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) add(c[i], c[i + 1]);
    add(c.back(), c.front() + kTwoPi);
  }
  return p;
}

double predicted_curvature(const OptimalityReport& r, const Point2& p) {
  const double d = r.delta;
  const double l = r.lambda0;
  const double sign = p.norm() > 1.0 ? 1.0 : -1.0;
  return 1.0 - 3.0 * d +
         4.0 * d / (kTwoPi * l) * (r.partition.length_out - r.partition.length_in) +
         sign * 4.0 * d / l + r.mu1 * p.x() + r.mu2 * p.y();
}

OptimalityReport optimality_residual(const Shape& s, int samples) {
  if (samples < 8) throw ValidationError("need at least 8 residual samples");
  if (std::holds_alternative<Polygon>(s) || std::holds_alternative<DiskSegmentComposite>(s)) {
    throw ValidationError(
        "optimality residual needs a stadium or a radial shape; curvature of polygonal data "
        "is not computed");
  }
  check_normalized(s);

  OptimalityReport r;
  r.delta = deficit(s);
  r.lambda0 = barycentric_asymmetry(s);
  if (r.lambda0 < 1e-12) throw ConstraintError("λ0 = 0: the disk has no optimality residual");
  r.partition = circle_partition(s);
  const double k = 4.0 * r.delta / (kPi * r.lambda0);
  r.mu1 = k * (r.partition.cos_out - r.partition.cos_in);
  r.mu2 = k * (r.partition.sin_out - r.partition.sin_in);

  auto push = [&](const Point2& p, double curvature) {
    const double angle = std::atan2(p.y(), p.x());
    const bool near_crossing =
        std::any_of(r.partition.crossings.begin(), r.partition.crossings.end(),
                    [&](double c) { return angle_distance(angle, c) < kCrossingWindow; });
    if (near_crossing || std::abs(p.norm() - 1.0) < 1e-12) {
      ++r.skipped;
      return;
    }
    const double pred = predicted_curvature(r, p);
    r.samples.push_back({angle, p, curvature, pred, curvature - pred});
  };

  if (const auto* st = std::get_if<Stadium>(&s)) {
    const double rad = st->cap_radius();
    const double l = st->half_length();
    const int half = samples / 2;
    for (int side = 0; side < 2; ++side) {
      const Point2 c(side == 0 ? l : -l, 0.0);
      const double start = side == 0 ? -kPi / 2.0 : kPi / 2.0;
      for (int i = 0; i < half; ++i) {
        const double phi = start + kPi * (i + 0.5) / half;
        push(c + rad * Point2(std::cos(phi), std::sin(phi)), 1.0 / rad);
      }
    }
  } else {
    const auto& rs = std::get<RadialShape>(s);
    for (int i = 0; i < samples; ++i) {
      const double t = kTwoPi * (i + 0.5) / samples;
      const double R = rs.scale() * (1.0 + rs.profile_at(t));
      const double R1 = rs.scale() * rs.profile_derivative_at(t);
      const double R2 = rs.scale() * rs.profile_second_derivative_at(t);
      const double kappa =
          (R * R + 2.0 * R1 * R1 - R * R2) / std::pow(R * R + R1 * R1, 1.5);
      if (kappa < -1e-8) throw ValidationError("radial shape is not convex");
      if (kappa <= 1e-6) continue;  // flat part
      push(rs.center() + R * Point2(std::cos(t), std::sin(t)), kappa);
    }
  }
  for (const auto& x : r.samples) {
    r.max_abs_residual = std::max(r.max_abs_residual, std::abs(x.residual));
  }
  return r;
}

std::string optimality_csv(const OptimalityReport& r) {
  std::string out = "angle,C,predicted,residual\n";
  for (const auto& x : r.samples) {
    out += fmt::format("{:.12g},{:.12g},{:.12g},{:.6e}\n", x.angle, x.curvature, x.predicted,
                       x.residual);
  }
  return out;
}

}  // namespace iso
