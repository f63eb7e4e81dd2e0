#include "iso/functionals.hpp"

#include "iso/errors.hpp"
#include "iso/nelder_mead.hpp"
#include "iso/spectral.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace iso {

namespace {

double wrap(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

double polar_angle(const Point2& v) { return std::atan2(v.y(), v.x()); }

// Area of s ∩ B(c, r) for shapes bounded by segments and arcs, by Green's
// theorem over the pieces of ∂(s ∩ B): boundary of s inside the closed disk,
// plus circle arcs strictly inside s. Coordinates are taken relative to c.
class PiecewiseOverlap {
 public:
  explicit PiecewiseOverlap(const Shape& s) : shape_(s), boundary_(boundary_of(s)) {}

  double intersection(const Point2& c, double r) const {
    const double tol = 1e-12 * std::max(1.0, r);
    double total = 0.0;
    std::vector<double> cuts;
    auto in_disk = [&](const Point2& rel) { return rel.norm() <= r + tol; };

    for (const Segment& seg : boundary_.segments) {
      const Point2 a = seg.a - c;
      const Point2 d = seg.b - seg.a;
      const double qa = d.squaredNorm();
      const double qb = 2.0 * a.dot(d);
      const double qc = a.squaredNorm() - r * r;
      std::vector<double> ts{0.0, 1.0};
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        for (double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
          if (t >= 0.0 && t <= 1.0) {
            ts.push_back(t);
            cuts.push_back(wrap(polar_angle(a + t * d)));
          }
        }
      }
      std::sort(ts.begin(), ts.end());
      for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (ts[i + 1] - ts[i] <= 0.0) continue;
        const Point2 p = a + ts[i] * d;
        const Point2 q = a + ts[i + 1] * d;
        if (in_disk(0.5 * (p + q))) total += 0.5 * (p.x() * q.y() - p.y() * q.x());
      }
    }

    for (const Arc& arc : boundary_.arcs) {
      const Point2 cc = arc.center - c;
      const double rho = arc.radius;
      const double dist = cc.norm();
      std::vector<double> params{0.0, arc.sweep};
      if (dist > 0.0) {
        const double v = (r * r - dist * dist - rho * rho) / (2.0 * rho * dist);
        if (std::abs(v) <= 1.0) {
          const double beta = polar_angle(cc);
          const double alpha = std::acos(v);
          for (double phi : {beta + alpha, beta - alpha}) {
            const double rel = wrap(phi - arc.start);
            if (rel <= arc.sweep) {
              params.push_back(rel);
              cuts.push_back(wrap(polar_angle(cc + rho * Point2(std::cos(phi), std::sin(phi)))));
            }
          }
        }
      }
      std::sort(params.begin(), params.end());
      for (std::size_t i = 0; i + 1 < params.size(); ++i) {
        const double p0 = arc.start + params[i];
        const double p1 = arc.start + params[i + 1];
        if (p1 - p0 <= 0.0) continue;
        const double pm = 0.5 * (p0 + p1);
        if (!in_disk(cc + rho * Point2(std::cos(pm), std::sin(pm)))) continue;
        total += 0.5 * (rho * rho * (p1 - p0) +
                        rho * (cc.x() * (std::sin(p1) - std::sin(p0)) -
                               cc.y() * (std::cos(p1) - std::cos(p0))));
      }
    }

    auto strictly_inside = [&](double phi) {
      return signed_distance(shape_, c + r * Point2(std::cos(phi), std::sin(phi))) < -tol;
    };
    if (cuts.empty()) {
      if (strictly_inside(0.0)) total += kPi * r * r;
      return total;
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const double p0 = cuts[i];
      const double p1 = (i + 1 < cuts.size()) ? cuts[i + 1] : cuts[0] + kTwoPi;
      if (p1 - p0 <= 0.0) continue;
      if (strictly_inside(0.5 * (p0 + p1))) total += 0.5 * r * r * (p1 - p0);
    }
    return total;
  }

 private:
  const Shape& shape_;
  Boundary boundary_;
};

// Ray quadrature for radial shapes: along each sample direction the disk cuts
// an interval [t-, t+] and the shape occupies [0, R].
class RadialOverlap {
 public:
  explicit RadialOverlap(const RadialShape& rs)
      : center_(rs.center()), scale_(rs.scale()), radii_(rs.radii()), step_(rs.step()) {
    const int m = rs.size();
    cos_.resize(m);
    sin_.resize(m);
    for (int k = 0; k < m; ++k) {
      cos_[k] = std::cos(rs.angle(k));
      sin_[k] = std::sin(rs.angle(k));
    }
    area_ = 0.5 * spectral::periodic_integral(radii_.array().square().matrix());
  }

  double area() const { return area_; }

  bool concentric(const Point2& c) const { return (c - center_).norm() < 1e-9 * scale_; }

  double symmetric_difference(const Point2& c, double r) const {
    if (concentric(c)) {
      return 0.5 * spectral::periodic_abs_integral((radii_.array().square() - r * r).matrix());
    }
    return std::max(0.0, area_ + kPi * r * r - 2.0 * intersection(c, r));
  }

  double intersection(const Point2& c, double r) const {
    if (concentric(c)) return 0.5 * (area_ + kPi * r * r - symmetric_difference(c, r));
    const Point2 d = c - center_;
    const double d2 = d.squaredNorm();
    double sum = 0.0;
    for (Eigen::Index k = 0; k < radii_.size(); ++k) {
      const double p = d.x() * cos_[k] + d.y() * sin_[k];
      const double disc = r * r - (d2 - p * p);
      if (disc <= 0.0) continue;
      const double s = std::sqrt(disc);
      const double a = std::max(0.0, p - s);
      const double b = std::min(radii_[k], p + s);
      if (b > a) sum += 0.5 * (b * b - a * a);
    }
    return sum * step_;
  }

 private:
  Point2 center_;
  double scale_;
  Eigen::VectorXd radii_;
  double step_;
  Eigen::VectorXd cos_;
  Eigen::VectorXd sin_;
  double area_ = 0.0;
};

// One object per shape so repeated evaluations (Fraenkel search) reuse setup.
class DiskDistance {
 public:
  explicit DiskDistance(const Shape& s) : shape_(s), area_(area(s)) {
    if (const auto* rs = std::get_if<RadialShape>(&s)) {
      radial_.emplace(*rs);
      area_ = radial_->area();
    } else if (!std::holds_alternative<DiskSegmentComposite>(s)) {
      piecewise_.emplace(s);
    }
  }

  double area_value() const { return area_; }

  double intersection(const Point2& c, double r) const {
    if (radial_) return radial_->intersection(c, r);
    if (piecewise_) return piecewise_->intersection(c, r);
    double total = 0.0;
    for (const Disk& d : std::get<DiskSegmentComposite>(shape_).disks()) {
      total += lens_area(d.radius, r, (d.center - c).norm());
    }
    return total;
  }

  double symmetric_difference(const Point2& c, double r) const {
    if (radial_) return radial_->symmetric_difference(c, r);
    return std::max(0.0, area_ + kPi * r * r - 2.0 * intersection(c, r));
  }

 private:
  const Shape& shape_;
  double area_;
  std::optional<RadialOverlap> radial_;
  std::optional<PiecewiseOverlap> piecewise_;
};

void require_area(double a) {
  if (!(a > 0.0)) throw DegenerateShapeError("shape has zero area");
}

std::string num(double v) { return fmt::format("{:.15g}", v); }

}  // namespace

double lens_area(double r1, double r2, double d) {
  if (d >= r1 + r2) return 0.0;
  const double rmin = std::min(r1, r2);
  if (d <= std::abs(r1 - r2)) return kPi * rmin * rmin;
  const double c1 = std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0);
  const double c2 = std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0);
  const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  return r1 * r1 * std::acos(c1) + r2 * r2 * std::acos(c2) - 0.5 * std::sqrt(std::max(0.0, k));
}

double deficit(const Shape& s) {
  const double a = area(s);
  require_area(a);
  const double ball = 2.0 * std::sqrt(kPi * a);
  return (perimeter_minkowski(s) - ball) / ball;
}

double intersection_with_disk(const Shape& s, const Point2& c, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("disk radius must be positive");
  return DiskDistance(s).intersection(c, r);
}

double symmetric_difference_with_disk(const Shape& s, const Point2& c, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("disk radius must be positive");
  return DiskDistance(s).symmetric_difference(c, r);
}

double barycentric_asymmetry(const Shape& s) {
  const DiskDistance dd(s);
  const double a = dd.area_value();
  require_area(a);
  return dd.symmetric_difference(barycenter(s), std::sqrt(a / kPi)) / a;
}

FraenkelResult fraenkel_asymmetry(const Shape& s) {
  const DiskDistance dd(s);
  const double a = dd.area_value();
  require_area(a);
  const double r = std::sqrt(a / kPi);
  auto objective = [&](const Point2& y) { return dd.symmetric_difference(y, r) / a; };

  const BoundingBox box = bounding_box(s);
  const double step = diameter(s) / 50.0;
  Point2 best = box.lo;
  double best_value = std::numeric_limits<double>::infinity();
  const int nx = static_cast<int>(std::floor(box.width() / step)) + 1;
  const int ny = static_cast<int>(std::floor(box.height() / step)) + 1;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const Point2 y(box.lo.x() + i * step, box.lo.y() + j * step);
      const double v = objective(y);
      if (v < best_value) {
        best_value = v;
        best = y;
      }
    }
  }

  const auto nm = nelder_mead<2>([&](const Eigen::Vector2d& y) { return objective(y); }, best,
                                 step, 1e-6);
  FraenkelResult out{nm.value, nm.x, nm.converged};
  const Point2 g = barycenter(s);
  const double at_barycenter = objective(g);
  if (at_barycenter <= out.value) {
    out.value = at_barycenter;
    out.center = g;
  }
  return out;
}

double two_ball_l1_distance(double a) {
  if (!std::isfinite(a) || a < 0.0 || a > 2.0) {
    throw ValidationError("two-ball distance needs 0 <= a <= 2");
  }
  return 4.0 * std::asin(0.5 * a) + 2.0 * a * std::sqrt(1.0 - 0.25 * a * a);
}

FunctionalsReport evaluate(const Shape& s, bool with_fraenkel) {
  FunctionalsReport r;
  r.area = area(s);
  require_area(r.area);
  r.perimeter = perimeter_minkowski(s);
  r.barycenter = barycenter(s);
  r.delta = deficit(s);
  r.lambda0 = barycentric_asymmetry(s);
  r.diameter = diameter(s);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.ratio_lambda0 = r.lambda0 > 0.0 ? r.delta / (r.lambda0 * r.lambda0) : nan;
  if (with_fraenkel) {
    const FraenkelResult f = fraenkel_asymmetry(s);
    r.lambda = f.value;
    r.lambda_center = f.center;
    r.lambda_converged = f.converged;
    r.ratio_lambda = r.lambda > 0.0 ? r.delta / (r.lambda * r.lambda) : nan;
  } else {
    r.lambda = nan;
    r.lambda_center = Point2::Constant(nan);
    r.ratio_lambda = nan;
  }
  return r;
}

std::string report_csv_header() {
  return "area,perimeter,barycenter_x,barycenter_y,delta,lambda0,lambda,lambda_center_x,"
         "lambda_center_y,diameter,ratio_lambda0,ratio_lambda";
}

std::string report_csv_row(const FunctionalsReport& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}", num(r.area), num(r.perimeter),
                     num(r.barycenter.x()), num(r.barycenter.y()), num(r.delta), num(r.lambda0),
                     num(r.lambda), num(r.lambda_center.x()), num(r.lambda_center.y()),
                     num(r.diameter), num(r.ratio_lambda0), num(r.ratio_lambda));
}

std::string report_json(const FunctionalsReport& r) {
  auto value = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::ordered_json j;
  j["area"] = value(r.area);
  j["perimeter"] = value(r.perimeter);
  j["barycenter"] = {value(r.barycenter.x()), value(r.barycenter.y())};
  j["delta"] = value(r.delta);
  j["lambda0"] = value(r.lambda0);
  j["lambda"] = value(r.lambda);
  j["lambda_center"] = {value(r.lambda_center.x()), value(r.lambda_center.y())};
  j["lambda_converged"] = r.lambda_converged;
  j["diameter"] = value(r.diameter);
  j["ratio_lambda0"] = value(r.ratio_lambda0);
  j["ratio_lambda"] = value(r.ratio_lambda);
  return j.dump(2);
}

}  // namespace iso
