#include "iso/verify.hpp"

#include "iso/barrier.hpp"
#include "iso/families.hpp"
#include "iso/functionals.hpp"
#include "iso/optimality.hpp"
#include "iso/rearrangement.hpp"
#include "iso/shape_io.hpp"
#include "iso/variational.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

namespace iso {

namespace {

using Clock = std::chrono::steady_clock;

SuiteResult timed(const std::string& name, const std::function<void(SuiteResult&)>& body) {
  SuiteResult r;
  r.name = name;
  const auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    ++r.violations;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

void check(SuiteResult& r, bool ok, const std::string& what) {
  ++r.cases;
  if (!ok) {
    if (r.violations == 0) r.detail = what;
    ++r.violations;
  }
}

// Nonnegative step function with 1..6 pieces on a grid of n cells.
SampledFunction random_step(std::mt19937_64& rng, double half_width, int n) {
  std::uniform_int_distribution<int> pieces(1, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int k = pieces(rng);
  std::vector<double> cuts{-half_width, half_width};
  for (int i = 1; i < k; ++i) cuts.push_back(-half_width + 2.0 * half_width * unit(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> levels(cuts.size() - 1);
  for (auto& l : levels) l = unit(rng) < 0.2 ? 0.0 : unit(rng);
  return SampledFunction::sample(half_width, n, [&](double x) {
    const auto it = std::upper_bound(cuts.begin(), cuts.end(), x);
    const auto i = std::clamp<std::ptrdiff_t>(it - cuts.begin() - 1, 0, levels.size() - 1);
    return levels[static_cast<std::size_t>(i)];
  });
}

Shape random_shape(std::mt19937_64& rng, int i) {
  switch (i % 3) {
    case 0: return random_convex_polygon(rng);
    case 1: return random_convex_radial(rng);
    default: return random_composite(rng);
  }
}

}  // namespace

SuiteResult inequality_chain_suite(std::uint64_t seed, int shapes) {
  return timed("inequality chain", [&](SuiteResult& r) {
    std::mt19937_64 rng(seed);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < shapes; ++i) {
      const Shape s = random_shape(rng, i);
      const auto f = evaluate(s);
      const auto tag = [&](const char* what) { return fmt::format("shape {}: {}", i, what); };
      check(r, f.lambda <= f.lambda0 + 1e-9, tag("lambda > lambda0"));
      check(r, f.lambda0 <= 2.0 + 1e-12, tag("lambda0 > 2"));
      check(r, f.delta >= -1e-12, tag("delta < 0"));
      if (f.lambda > 1e-3) {
        worst = std::min(worst, f.ratio_lambda);
        check(r, f.ratio_lambda >= 0.02, tag("delta/lambda^2 < 0.02"));
      }
      check(r, f.diameter <= 0.5 * f.perimeter + 1e-9, tag("diameter > P/2"));
      if (const auto* rs = std::get_if<RadialShape>(&s)) {
        if (rs->samples().cwiseAbs().maxCoeff() <= 0.1 && is_convex_radial(*rs)) {
          check(r, f.delta >= f.lambda0 * f.lambda0 / 16.0, tag("delta < lambda0^2/16"));
        }
      }
    }
    if (r.violations == 0) r.detail = fmt::format("min delta/lambda^2 = {:.4f}", worst);
  });
}

SuiteResult riesz_suite(std::uint64_t seed, int triples) {
  return timed("riesz and rearrangement", [&](SuiteResult& r) {
    std::mt19937_64 rng(seed);
    const double T = kPi;
    const int n = 256;
    for (int i = 0; i < triples; ++i) {
      const auto f = random_step(rng, T, n);
      const auto g = random_step(rng, T, n);
      const auto h = random_step(rng, T, n);
      const auto p = riesz_pair(f, g, h);
      check(r, p.holds(), fmt::format("triple {}: lhs {:.6g} > rhs {:.6g}", i, p.lhs, p.rhs));

      const auto fs = decreasing_rearrangement(f);
      Eigen::VectorXd a = f.values(), b = fs.values();
      std::sort(a.data(), a.data() + n);
      std::sort(b.data(), b.data() + n);
      check(r, a == b, fmt::format("triple {}: not equimeasurable", i));

      // f <= f + g pointwise
      const SampledFunction fg(T, f.values() + g.values());
      const auto fgs = decreasing_rearrangement(fg);
      check(r, (fs.values().array() <= fgs.values().array()).all(),
            fmt::format("triple {}: monotonicity", i));

      Eigen::VectorXd shifted(n);
      const int k = static_cast<int>(rng() % n);
      for (int j = 0; j < n; ++j) shifted[j] = f.values()[(j + k) % n];
      check(r, decreasing_rearrangement(SampledFunction(T, shifted)).values() == fs.values(),
            fmt::format("triple {}: shift invariance", i));
    }
  });
}

SuiteResult round_trip_suite(std::uint64_t seed, int shapes) {
  return timed("json round trip", [&](SuiteResult& r) {
    std::mt19937_64 rng(seed);
    std::vector<Shape> all{Stadium(0.575), dumbbell_shape()};
    for (int i = 0; i < shapes; ++i) all.push_back(random_shape(rng, i));
    for (std::size_t i = 0; i < all.size(); ++i) {
      const Shape back = shape_from_json(shape_to_json(all[i]));
      const bool same = std::abs(area(back) - area(all[i])) <= 1e-12 &&
                        std::abs(deficit(back) - deficit(all[i])) <= 1e-12 &&
                        std::abs(barycentric_asymmetry(back) - barycentric_asymmetry(all[i])) <= 1e-12;
      check(r, same, fmt::format("shape {} changed after a round trip", i));
    }
  });
}

std::vector<SuiteResult> verify_all(std::uint64_t seed) {
  std::vector<SuiteResult> rows;

  rows.push_back(timed("stadium roots", [](SuiteResult& r) {
    const double a = eqop1_root();
    const double b = eqop2_root();
    check(r, std::abs(a - 0.5750) < 1e-3, "eqop1 root away from 0.5750");
    check(r, std::abs(a - b) < 1e-6, "eqop1 and eqop2 roots differ");
    check(r, std::abs(stadium_profile(a).ratio - 0.406) < 1e-3, "ratio at root away from 0.406");
    check(r, std::abs(stadium_profile(0.7).ratio - stadium_geometric(0.7).ratio) < 1e-8,
          "closed form and geometry disagree");
    r.detail = fmt::format("theta = {:.10f}, ratio = {:.6f}", a, stadium_profile(a).ratio);
  }));

  rows.push_back(timed("dumbbell", [](SuiteResult& r) {
    const auto d = dumbbell_report();
    const double expected = (std::sqrt(2.0) - 1.0) / 4.0 + 1.0 / kTwoPi;
    check(r, std::abs(d.ratio - expected) < 1e-5, "ratio differs from closed form");
    check(r, std::abs(d.lambda0 - 2.0) < 1e-10, "lambda0 != 2");
    r.detail = fmt::format("ratio = {:.6f}", d.ratio);
  }));

  rows.push_back(timed("counterexample sequence", [](SuiteResult& r) {
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= 200; ++n) {
      const auto c = fuglede_counterexample(n);
      check(r, std::abs(area(c.shape) - kPi) < 1e-10, fmt::format("n = {}: area", n));
      check(r, barycenter(c.shape).norm() < 1e-10, fmt::format("n = {}: barycenter", n));
      // For n = 2, 3 the unit disk at the origin still meets both disks, so
      // λ0 < 2 there, and δ rises from n = 2 to n = 3 before decreasing.
      if (n >= 4) {
        check(r, std::abs(c.record.lambda0 - 2.0) < 1e-10, fmt::format("n = {}: lambda0", n));
        check(r, c.record.delta < prev, fmt::format("n = {}: delta not decreasing", n));
      }
      prev = c.record.delta;
    }
    if (r.violations == 0) r.detail = fmt::format("lambda0 = 2 from n = 4, delta(200) = {:.3e}", prev);
  }));

  rows.push_back(timed("barrier bound", [](SuiteResult& r) {
    const auto c = barrier_check(10000);
    check(r, c.min_gap >= -1e-12, "M < H somewhere");
    check(r, c.min_star_gap >= -1e-12, "M* < H* somewhere");
    const double m = m_lower_bound();
    check(r, kPi / 4.0 * m >= 0.41, "(pi/4) m_lower < 0.41");
    r.detail = fmt::format("integral = {:.6f}, m_lower = {:.6f}", barrier_integral(), m);
  }));

  rows.push_back(timed("variational solvers", [seed](SuiteResult& r) {
    const auto fp = opepl_solve_fixedpoint(square_wave_sign(4096));
    const auto fo = opepl_solve_fourier(256, 4096, 8, seed);
    for (const auto* s : {&fp, &fo}) {
      check(r, s->m >= 0.5388 - 1e-3 && s->m <= 3.0 * kPi / 16.0 + 1e-6, s->method + ": m outside bracket");
      check(r, s->norm_identity_gap() < 1e-6, s->method + ": norm identity");
      check(r, s->max_constraint_residual() < 1e-6, s->method + ": constraints");
    }
    check(r, std::abs(fp.m - fo.m) < 1e-3, "solvers disagree");
    if (r.violations == 0) r.detail = fmt::format("m = {:.8f} / {:.8f}", fp.m, fo.m);
  }));

  rows.push_back(inequality_chain_suite(seed, 150));
  rows.push_back(riesz_suite(seed, 50));

  rows.push_back(timed("near-ball limit", [](SuiteResult& r) {
    double worst = std::numeric_limits<double>::infinity();
    for (double eps : {0.1, 0.05, 0.02}) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(3), s = Eigen::VectorXd::Zero(3);
      c[2] = eps;
      const Shape shape = nearly_spherical(RadialShape::from_fourier(c, s, 4096));
      const auto f = evaluate(shape);
      worst = std::min(worst, f.ratio_lambda);
      check(r, f.ratio_lambda >= 0.45, fmt::format("eps = {}: delta/lambda^2 < 0.45", eps));
    }
    r.detail = fmt::format("min delta/lambda^2 = {:.4f}", worst);
  }));

  rows.push_back(timed("optimality residual", [](SuiteResult& r) {
    const auto at_root = optimality_residual(Stadium(eqop2_root()));
    const auto off = optimality_residual(Stadium(0.8));
    check(r, at_root.max_abs_residual < 1e-4, "cap residual at the root >= 1e-4");
    check(r, off.max_abs_residual > 1e-2, "cap residual at 0.8 <= 1e-2");
    for (const auto* o : {&at_root, &off}) {
      check(r, std::abs(o->mu1) < 1e-8 && std::abs(o->mu2) < 1e-8, "multipliers of a symmetric shape");
      check(r, std::abs(o->partition.length_in + o->partition.length_out - kTwoPi) < 1e-8,
            "partition does not close");
    }
    r.detail = fmt::format("residual {:.2e} at root, {:.2e} at 0.8", at_root.max_abs_residual,
                           off.max_abs_residual);
  }));

  rows.push_back(timed("two-ball distance", [](SuiteResult& r) {
    for (int i = 0; i <= 40; ++i) {
      const double a = 0.05 * i;
      const double oracle = 2.0 * (kPi - lens_area(1.0, 1.0, a));
      check(r, std::abs(two_ball_l1_distance(a) - oracle) < 1e-8, fmt::format("a = {}", a));
    }
    check(r, std::abs(two_ball_l1_distance(1e-6) / 1e-6 - 4.0) < 1e-5, "d(a)/a does not tend to 4");
  }));

  rows.push_back(round_trip_suite(seed, 30));
  return rows;
}

std::string verify_table(const std::vector<SuiteResult>& rows) {
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  std::string out = fmt::format("{:<{}}  {:>6}  {:>5}  {:>8}  {}\n", "check", width, "cases",
                                "fail", "seconds", "detail");
  for (const auto& r : rows) {
    out += fmt::format("{:<{}}  {:>6}  {:>5}  {:>8.2f}  {} {}\n", r.name, width, r.cases,
                       r.violations, r.seconds, r.passed() ? "PASS" : "FAIL", r.detail);
  }
  return out;
}

}  // namespace iso
