#include "iso/families.hpp"

#include "iso/errors.hpp"
#include "iso/functionals.hpp"
#include "iso/spectral.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace iso {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ScanRecord record_of(double parameter, double delta, double lambda0, double lambda) {
  return {parameter, delta, lambda0, lambda, lambda0 > 0.0 ? delta / (lambda0 * lambda0) : kNaN};
}

struct Trig {
  Eigen::VectorXd c;
  Eigen::VectorXd s;
  explicit Trig(int m) : c(m), s(m) {
    for (int k = 0; k < m; ++k) {
      c[k] = std::cos(kTwoPi * k / m);
      s[k] = std::sin(kTwoPi * k / m);
    }
  }
};

double integral(const Eigen::ArrayXd& v) { return spectral::periodic_integral(v.matrix()); }

}  // namespace

ScanRecord stadium_profile(double theta) {
  if (!std::isfinite(theta) || !(theta > 0.0) || theta > 0.5 * kPi + 1e-15) {
    throw ValidationError("stadium theta must lie in (0, pi/2]");
  }
  const double r = std::sin(theta);
  const double delta = 1.0 / (2.0 * r) + 0.5 * r - 1.0;
  double lambda0 = 0.0;
  if (std::tan(theta) <= 0.25 * kPi) {
    lambda0 = (2.0 / kPi) * (kPi - 2.0 * theta - std::sin(2.0 * theta));
  } else {
    // The unit circle passes through both caps; each cap disk sticks out by
    // its area minus the lens it shares with the unit disk.
    const double l = kPi * (1.0 - r * r) / (4.0 * r);
    lambda0 = 4.0 * (kPi * r * r - lens_area(r, 1.0, l)) / kPi;
  }
  return record_of(theta, std::max(0.0, delta), std::max(0.0, lambda0), std::max(0.0, lambda0));
}

ScanRecord stadium_geometric(double theta) {
  const Shape st = Stadium(theta);
  return record_of(theta, deficit(st), barycentric_asymmetry(st), kNaN);
}

DiskSegmentComposite dumbbell_shape() {
  const double r = 1.0 / std::sqrt(2.0);
  const double c = 1.0 + r;
  return DiskSegmentComposite({Disk{Point2(-c, 0.0), r}, Disk{Point2(c, 0.0), r}},
                              {Segment{Point2(-1.0, 0.0), Point2(1.0, 0.0)}});
}

ScanRecord dumbbell_report() {
  const Shape s = dumbbell_shape();
  return record_of(2.0, deficit(s), barycentric_asymmetry(s), kNaN);
}

CounterexampleDisks counterexample_disks(int n) {
  if (n < 2) throw ValidationError("counterexample index must be >= 2");
  const double nd = n;
  return {1.0 - 1.0 / nd, 2.0, std::sqrt(2.0 * nd - 1.0) / nd,
          -2.0 * (nd - 1.0) * (nd - 1.0) / (2.0 * nd - 1.0)};
}

Counterexample fuglede_counterexample(int n) {
  const CounterexampleDisks d = counterexample_disks(n);
  DiskSegmentComposite shape({Disk{Point2(d.big_center, 0.0), d.big_radius},
                              Disk{Point2(d.small_center, 0.0), d.small_radius}},
                             {});
  const Shape s = shape;
  return {std::move(shape), record_of(n, deficit(s), barycentric_asymmetry(s), kNaN)};
}

double NlResiduals::max_abs() const {
  return std::max({std::abs(area), std::abs(cos_moment), std::abs(sin_moment)});
}

NlResiduals nl_residuals(const Eigen::VectorXd& u) {
  const Trig t(static_cast<int>(u.size()));
  const Eigen::ArrayXd one = 1.0 + u.array();
  const Eigen::ArrayXd cube = one.cube();
  return {integral(one.square()) / kTwoPi - 1.0, integral(t.c.array() * cube),
          integral(t.s.array() * cube)};
}

RadialShape nearly_spherical(const RadialShape& raw, bool project) {
  if (!project) return raw;
  const int m = raw.size();
  const Trig t(m);
  const Eigen::ArrayXd base = 1.0 + raw.samples().array();
  const Eigen::ArrayXd c = t.c.array();
  const Eigen::ArrayXd sn = t.s.array();

  auto residual = [&](double s, double a, double b, Eigen::ArrayXd& w) {
    w = base + a * c + b * sn;
    const Eigen::ArrayXd one = s * w;
    const Eigen::ArrayXd cube = one.cube();
    return Eigen::Vector3d(integral(one.square()) / kTwoPi - 1.0, integral(c * cube),
                           integral(sn * cube));
  };

  double s = std::sqrt(kTwoPi / integral(base.square()));
  double a = 0.0;
  double b = 0.0;
  Eigen::ArrayXd w;
  Eigen::Vector3d f = residual(s, a, b, w);
  for (int it = 0; it < 60 && f.cwiseAbs().maxCoeff() > 1e-14; ++it) {
    const Eigen::ArrayXd w2 = w.square();
    const Eigen::ArrayXd w3 = w2 * w;
    Eigen::Matrix3d j;
    j(0, 0) = 2.0 * s * integral(w2) / kTwoPi;
    j(0, 1) = 2.0 * s * s * integral(w * c) / kTwoPi;
    j(0, 2) = 2.0 * s * s * integral(w * sn) / kTwoPi;
    j(1, 0) = 3.0 * s * s * integral(c * w3);
    j(1, 1) = 3.0 * s * s * s * integral(c * c * w2);
    j(1, 2) = 3.0 * s * s * s * integral(c * sn * w2);
    j(2, 0) = 3.0 * s * s * integral(sn * w3);
    j(2, 1) = j(1, 2);
    j(2, 2) = 3.0 * s * s * s * integral(sn * sn * w2);
    const Eigen::Vector3d step = j.fullPivLu().solve(-f);
    if (!step.allFinite()) throw ProjectionError("singular projection Jacobian");
    double damp = 1.0;
    Eigen::Vector3d next_f;
    Eigen::ArrayXd next_w;
    for (; damp > 1e-4; damp *= 0.5) {
      next_f = residual(s + damp * step[0], a + damp * step[1], b + damp * step[2], next_w);
      if (next_w.minCoeff() > 0.0 && s + damp * step[0] > 0.0 &&
          next_f.cwiseAbs().maxCoeff() < f.cwiseAbs().maxCoeff()) {
        break;
      }
    }
    if (!(damp > 1e-4)) break;
    s += damp * step[0];
    a += damp * step[1];
    b += damp * step[2];
    f = next_f;
    w = next_w;
  }
  if (!(f.cwiseAbs().maxCoeff() < 1e-10) || !(w.minCoeff() > 0.0)) {
    throw ProjectionError(fmt::format("projection did not converge (residual {:.3e})",
                                      f.cwiseAbs().maxCoeff()));
  }

  if (raw.has_fourier()) {
    Eigen::VectorXd cc = raw.cos_coeffs();
    Eigen::VectorXd ss = raw.sin_coeffs();
    if (cc.size() < 2) {
      cc.conservativeResizeLike(Eigen::VectorXd::Zero(2));
      ss.conservativeResizeLike(Eigen::VectorXd::Zero(2));
    }
    cc *= s;
    ss *= s;
    cc[0] = s * (1.0 + raw.cos_coeffs()[0]) - 1.0;
    cc[1] += s * a;
    ss[1] += s * b;
    return RadialShape::from_fourier(cc, ss, m, raw.center(), raw.scale());
  }
  Eigen::VectorXd u = (s * w - 1.0).matrix();
  return RadialShape(std::move(u), raw.center(), raw.scale());
}

bool is_convex_radial(const RadialShape& s) {
  const Eigen::ArrayXd r = 1.0 + s.samples().array();
  const Eigen::ArrayXd d1 = s.derivative().array();
  const Eigen::ArrayXd d2 = s.second_derivative().array();
  return (r.square() + 2.0 * d1.square() - r * d2).minCoeff() > 0.0;
}

std::vector<ScanRecord> scan(Family family, double lo, double hi, int steps, bool geometric) {
  if (steps < 2) throw ValidationError("scan needs at least 2 steps");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    throw ValidationError("scan range must satisfy lo < hi");
  }
  std::vector<ScanRecord> rows;
  if (family == Family::Stadium) {
    for (int i = 0; i < steps; ++i) {
      const double theta = lo + (hi - lo) * i / (steps - 1);
      rows.push_back(geometric ? stadium_geometric(theta) : stadium_profile(theta));
    }
    return rows;
  }
  long last = -1;
  for (int i = 0; i < steps; ++i) {
    const long n = std::lround(lo + (hi - lo) * i / (steps - 1));
    if (n < 2) throw ValidationError("counterexample index must be >= 2");
    if (n == last) continue;
    last = n;
    rows.push_back(fuglede_counterexample(static_cast<int>(n)).record);
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRecord>& rows) {
  std::string out = "param,delta,lambda0,lambda,ratio\n";
  for (const ScanRecord& r : rows) {
    out += fmt::format("{:.15g},{:.15g},{:.15g},{:.15g},{:.15g}\n", r.parameter, r.delta,
                       r.lambda0, r.lambda, r.ratio);
  }
  return out;
}

Polygon random_convex_polygon(std::mt19937_64& rng, int points) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
      const double rad = std::sqrt(unit(rng));
      const double ang = kTwoPi * unit(rng);
      pts.emplace_back(rad * std::cos(ang), rad * std::sin(ang));
    }
    std::vector<Point2> hull = convex_hull(std::move(pts));
    if (hull.size() >= 3) return Polygon(std::move(hull));
  }
}

RadialShape random_convex_radial(std::mt19937_64& rng, double max_amplitude, int samples) {
  constexpr int kHarmonics = 6;
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::uniform_real_distribution<double> amp(0.05 * max_amplitude, max_amplitude);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(kHarmonics + 1);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(kHarmonics + 1);
    for (int k = 1; k <= kHarmonics; ++k) {
      const double decay = (k == 1) ? 0.3 : 1.0 / (k * k);
      c[k] = sym(rng) * decay;
      s[k] = sym(rng) * decay;
    }
    const double target = amp(rng);
    const double sup = spectral::synthesize(c, s, samples).cwiseAbs().maxCoeff();
    if (!(sup > 0.0)) continue;
    c *= target / sup;
    s *= target / sup;
    const RadialShape projected =
        nearly_spherical(RadialShape::from_fourier(c, s, samples), true);
    if (projected.samples().cwiseAbs().maxCoeff() <= max_amplitude && is_convex_radial(projected)) {
      return projected;
    }
  }
  throw ProjectionError("could not draw a convex nearly spherical profile");
}

DiskSegmentComposite random_composite(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 3);
  for (;;) {
    const int nd = count(rng);
    std::vector<Disk> disks{Disk{Point2::Zero(), 0.3 + 0.7 * unit(rng)}};
    std::vector<Segment> segs;
    bool ok = true;
    for (int i = 1; i < nd && ok; ++i) {
      const Disk& prev = disks.back();
      const double r = 0.3 + 0.7 * unit(rng);
      const double gap = 1.5 * unit(rng);
      const double ang = kTwoPi * unit(rng);
      const Point2 e(std::cos(ang), std::sin(ang));
      const Disk next{prev.center + (prev.radius + gap + r) * e, r};
      const Segment seg{prev.center + prev.radius * e, next.center - r * e};
      for (const Disk& d : disks) {
        if ((d.center - next.center).norm() < d.radius + r + 1e-9) ok = false;
        if (&d != &prev && distance_to_segment(d.center, seg) <= d.radius) ok = false;
      }
      disks.push_back(next);
      if (gap > 1e-9) segs.push_back(seg);
    }
    if (ok) return DiskSegmentComposite(std::move(disks), std::move(segs));
  }
}

ConjectureReport conjecture_scan(std::uint64_t seed, int radial_count, int polygon_count) {
  std::mt19937_64 rng(seed);
  ConjectureReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  auto consider = [&rep](const Shape& s, const std::string& label) {
    const double l0 = barycentric_asymmetry(s);
    ++rep.shapes;
    if (!(l0 > 0.0)) return;
    const double ratio = deficit(s) / (l0 * l0);
    if (ratio < rep.min_ratio) {
      rep.min_ratio = ratio;
      rep.argmin = label;
    }
  };
  for (int i = 0; i < radial_count; ++i) {
    consider(random_convex_radial(rng), fmt::format("radial #{}", i));
  }
  for (int i = 0; i < polygon_count; ++i) {
    consider(normalize(random_convex_polygon(rng)), fmt::format("polygon #{}", i));
  }
  return rep;
}

}  // namespace iso
