#include <doctest.h>

#include "iso/errors.hpp"
#include "iso/families.hpp"
#include "iso/functionals.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <cmath>
#include <random>

using namespace iso;

namespace {
DiskSegmentComposite unit_disk(const Point2& c = Point2::Zero()) {
  return DiskSegmentComposite::disk(c, 1.0);
}
}  // namespace

TEST_CASE("deficit") {
  CHECK(std::abs(deficit(unit_disk())) < 1e-15);
  // 1/(2 sin θ) + sin θ / 2 - 1 at θ = 0.5750, 30-digit reference
  CHECK(deficit(Stadium(0.5750)) == doctest::Approx(0.191314257340041650).epsilon(1e-12));
  CHECK(deficit(dumbbell_shape()) == doctest::Approx(1.05083333474067639).epsilon(1e-12));
  CHECK(deficit(dumbbell_shape()) == doctest::Approx(std::sqrt(2.0) - 1.0 + 2.0 / kPi));
}

TEST_CASE("symmetric difference with a disk, closed cases") {
  CHECK(symmetric_difference_with_disk(unit_disk(), Point2::Zero(), 1.0) < 1e-14);
  CHECK(symmetric_difference_with_disk(unit_disk(), Point2(3, 0), 1.0) == doctest::Approx(kTwoPi));
  CHECK(symmetric_difference_with_disk(unit_disk(), Point2(1, 0), 1.0) ==
        doctest::Approx(3.82644590996207279).epsilon(1e-12));
  CHECK(intersection_with_disk(Stadium(0.5), Point2(50, 0), 1.0) == 0.0);
}

TEST_CASE("polygon clipping against a finely polygonized disk") {
  // shapely, disk buffered with 2^16 segments per quarter circle
  const Polygon square = Polygon::rectangle(Point2(0, 0), Point2(1, 1));
  CHECK(symmetric_difference_with_disk(square, Point2(0.5, 0.2), 0.6) ==
        doctest::Approx(0.6900311112442268).epsilon(1e-9));
  CHECK(intersection_with_disk(square, Point2(0.5, 0.2), 0.6) ==
        doctest::Approx(0.7204711206704566).epsilon(1e-9));
  // disk at the reentrant corner: three quarters of it minus two segments
  // cut by x = 0 and y = 0 (mpmath)
  const Polygon ell({{0, 0}, {3, 0}, {3, 1}, {1, 1}, {1, 3}, {0, 3}});
  CHECK(symmetric_difference_with_disk(ell, Point2(1, 1), 1.2) ==
        doctest::Approx(3.458302187444218516).epsilon(1e-13));
  CHECK(intersection_with_disk(ell, Point2(1, 1), 1.2) ==
        doctest::Approx(3.032795616862541873).epsilon(1e-13));
  const Polygon tri({{0, 0}, {2, 0}, {0.5, 1.5}});
  CHECK(symmetric_difference_with_disk(tri, Point2(0.8, 0.5), 0.5) ==
        doctest::Approx(0.7155503656147963).epsilon(1e-9));
}

TEST_CASE("symmetric difference agrees with rejection sampling on random pairs") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int outside = 0;
  for (int i = 0; i < 50; ++i) {
    const Polygon p = random_convex_polygon(rng, 6);
    const auto box = bounding_box(p);
    const Point2 c = box.lo + Point2(unit(rng) * box.width(), unit(rng) * box.height());
    const double r = 0.2 + 0.8 * unit(rng);
    const auto mc = oracle::monte_carlo_symdiff([&](const Point2& q) { return contains(p, q); },
                                                box, c, r, 10'000'000, 100 + i);
    const double exact = symmetric_difference_with_disk(p, c, r);
    if (std::abs(exact - mc.value) > 3.0 * mc.std_error) ++outside;
  }
  // 3σ: a handful of misses in 50 would already be suspicious
  CHECK(outside <= 2);
}

TEST_CASE("radial shapes: concentric and offset disks") {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(3), s = Eigen::VectorXd::Zero(3);
  c[2] = 0.1;
  const auto r = RadialShape::from_fourier(c, s, 4096);
  // concentric: (1+u)² - 1 = c (0.2 + 0.01 c) with c = cos 2θ has the sign of
  // c, so ½∫|.| = 0.1 ∫|c| = 0.4
  // samples are joined linearly, so the error is second order in the step
  const double e4096 = std::abs(symmetric_difference_with_disk(r, Point2::Zero(), 1.0) - 0.4);
  const auto fine = RadialShape::from_fourier(c, s, 16384);
  const double e16384 = std::abs(symmetric_difference_with_disk(fine, Point2::Zero(), 1.0) - 0.4);
  CHECK(e4096 < 1e-6);
  CHECK(e16384 < e4096 / 10.0);
  const auto mc = oracle::monte_carlo_symdiff([&](const Point2& q) { return contains(r, q); },
                                              bounding_box(r), Point2(0.2, 0.1), 0.9, 10'000'000, 7);
  CHECK(std::abs(symmetric_difference_with_disk(r, Point2(0.2, 0.1), 0.9) - mc.value) <=
        3.0 * mc.std_error);
}

TEST_CASE("barycentric asymmetry") {
  CHECK(barycentric_asymmetry(unit_disk()) < 1e-15);
  for (int n : {4, 10, 100, 10000}) {
    CHECK(barycentric_asymmetry(fuglede_counterexample(n).shape) == doctest::Approx(2.0).epsilon(1e-12));
  }
  // (2/π)(π - 2θ - sin 2θ) at θ = 0.5750
  CHECK(barycentric_asymmetry(Stadium(0.5750)) == doctest::Approx(0.686803689903291909).epsilon(1e-11));
  CHECK(barycentric_asymmetry(dumbbell_shape()) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("fraenkel asymmetry") {
  const auto d = fraenkel_asymmetry(unit_disk());
  CHECK(d.value < 1e-9);
  CHECK(d.center.norm() < 1e-5);
  const auto moved = fraenkel_asymmetry(unit_disk(Point2(5, 5)));
  CHECK(moved.value < 1e-9);
  CHECK((moved.center - Point2(5, 5)).norm() < 1e-5);
  for (double t : {0.3, 0.575, 0.9, 1.3}) {
    const Stadium s(t);
    CHECK(std::abs(fraenkel_asymmetry(s).value - barycentric_asymmetry(s)) < 1e-5);
  }
  // an off-center composite: the optimum is strictly below λ0
  const DiskSegmentComposite two({{Point2(0, 0), 1.0}, {Point2(2.5, 0), 0.3}}, {});
  const auto f = fraenkel_asymmetry(two);
  CHECK(f.converged);
  CHECK(f.value < barycentric_asymmetry(two) - 1e-3);
}

TEST_CASE("two-ball distance") {
  CHECK(two_ball_l1_distance(0.0) == 0.0);
  CHECK(two_ball_l1_distance(2.0) == doctest::Approx(kTwoPi));
  CHECK(two_ball_l1_distance(1.0) == doctest::Approx(3.82644590996207279).epsilon(1e-14));
  for (int i = 0; i <= 40; ++i) {
    const double a = 0.05 * i;
    CHECK(std::abs(two_ball_l1_distance(a) - 2.0 * (kPi - lens_area(1.0, 1.0, a))) < 1e-8);
  }
  CHECK(std::abs(two_ball_l1_distance(1e-3) / 1e-3 - 4.0) < 0.1);
  CHECK_THROWS_AS(two_ball_l1_distance(-0.1), ValidationError);
  CHECK_THROWS_AS(two_ball_l1_distance(2.1), ValidationError);
}

TEST_CASE("report serialization") {
  const auto r = evaluate(Stadium(0.575));
  CHECK(report_csv_header() ==
        "area,perimeter,barycenter_x,barycenter_y,delta,lambda0,lambda,lambda_center_x,"
        "lambda_center_y,diameter,ratio_lambda0,ratio_lambda");
  const auto row = report_csv_row(r);
  CHECK(std::count(row.begin(), row.end(), ',') == 11);
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["delta"].get<double>() == doctest::Approx(r.delta));
  CHECK(std::isnan(evaluate(Stadium(0.575), false).lambda));
}
