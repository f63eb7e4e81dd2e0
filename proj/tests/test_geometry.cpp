#include <doctest.h>

#include "iso/errors.hpp"
#include "iso/families.hpp"
#include "iso/functionals.hpp"
#include "iso/geometry.hpp"
#include "oracles.hpp"

#include <array>
#include <cmath>
#include <random>

using namespace iso;

namespace {

Polygon unit_square() { return Polygon::rectangle(Point2(0, 0), Point2(1, 1)); }

RadialShape cos2(double eps, int samples = 4096) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(3), s = Eigen::VectorXd::Zero(3);
  c[2] = eps;
  return RadialShape::from_fourier(c, s, samples);
}

// Area and barycenter against rejection sampling, 3 standard errors.
void check_against_monte_carlo(const Shape& s, std::uint64_t seed) {
  const auto box = oracle::padded(bounding_box(s), 0.01);
  const auto mc = oracle::monte_carlo([&](const Point2& p) { return contains(s, p); }, box,
                                      10'000'000, seed);
  const Point2 g = barycenter(s);
  CHECK(std::abs(area(s) - mc.area.value) <= 3.0 * mc.area.std_error + 1e-12);
  CHECK(std::abs(g.x() - mc.x.value) <= 3.0 * mc.x.std_error + 1e-12);
  CHECK(std::abs(g.y() - mc.y.value) <= 3.0 * mc.y.std_error + 1e-12);
}

}  // namespace

TEST_CASE("area of simple shapes") {
  CHECK(area(unit_square()) == doctest::Approx(1.0).epsilon(1e-15));
  for (double t : {0.2, 0.575, 1.0, kPi / 2}) CHECK(area(Stadium(t)) == doctest::Approx(kPi));
  CHECK(area(fuglede_counterexample(10).shape) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(area(cos2(0.3)) == doctest::Approx(kPi * (1.0 + 0.045)).epsilon(1e-13));
}

TEST_CASE("barycenter of simple shapes") {
  const Point2 g = barycenter(DiskSegmentComposite::disk(Point2(3, -1), 1.0));
  CHECK(g.x() == doctest::Approx(3.0));
  CHECK(g.y() == doctest::Approx(-1.0));
  CHECK(barycenter(fuglede_counterexample(10).shape).norm() < 1e-12);
  CHECK(barycenter(cos2(0.4)).norm() < 1e-14);
}

TEST_CASE("area and barycenter agree with rejection sampling") {
  check_against_monte_carlo(Polygon({{0, 0}, {3, 0}, {3, 1}, {1, 1}, {1, 3}, {0, 3}}), 1);
  check_against_monte_carlo(Stadium(0.4), 2);
  check_against_monte_carlo(fuglede_counterexample(10).shape, 3);
  check_against_monte_carlo(dumbbell_shape(), 4);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(4), s = Eigen::VectorXd::Zero(4);
  c[2] = 0.2;
  s[3] = 0.1;
  check_against_monte_carlo(RadialShape::from_fourier(c, s, 4096, Point2(0.5, -0.2), 1.3), 5);
}

TEST_CASE("minkowski perimeter") {
  CHECK(perimeter_minkowski(DiskSegmentComposite::disk(Point2::Zero(), 1.0)) ==
        doctest::Approx(kTwoPi));
  CHECK(perimeter_minkowski(dumbbell_shape()) ==
        doctest::Approx(2.0 * std::sqrt(2.0) * kPi + 4.0).epsilon(1e-14));
  for (double t : {0.3, 0.575, 1.2}) {
    CHECK(perimeter_minkowski(Stadium(t)) ==
          doctest::Approx(kPi / std::sin(t) + kPi * std::sin(t)).epsilon(1e-14));
  }
  CHECK(perimeter_minkowski(unit_square()) == doctest::Approx(4.0));
  // ellipse-like radial shape against the arc length of its own polyline
  const auto r = cos2(0.2, 8192);
  double poly = 0.0;
  for (int k = 0; k < r.size(); ++k) {
    poly += (r.boundary_point((k + 1) % r.size()) - r.boundary_point(k)).norm();
  }
  CHECK(perimeter_minkowski(r) == doctest::Approx(poly).epsilon(1e-6));
}

TEST_CASE("epsilon-neighborhood perimeter estimate") {
  const std::array<double, 3> eps{0.2, 0.1, 0.05};
  const double disk = perimeter_epsilon_estimate(DiskSegmentComposite::disk(Point2::Zero(), 1.0), eps);
  CHECK(std::abs(disk - kTwoPi) / kTwoPi < 0.02);
  const double square = perimeter_epsilon_estimate(unit_square(), eps);
  CHECK(std::abs(square - 4.0) / 4.0 < 0.02);
  const double exact = 2.0 * std::sqrt(2.0) * kPi + 4.0;
  const double bell = perimeter_epsilon_estimate(dumbbell_shape(), eps);
  CHECK(std::abs(bell - exact) / exact < 0.03);

  const std::array<double, 1> tiny{1e-5};
  CHECK_THROWS_AS(perimeter_epsilon_estimate(unit_square(), tiny), ResolutionError);
  const std::array<double, 2> rising{0.1, 0.2};
  CHECK_THROWS_AS(perimeter_epsilon_estimate(unit_square(), rising), ValidationError);
}

TEST_CASE("diameter") {
  CHECK(diameter(DiskSegmentComposite::disk(Point2::Zero(), 1.0)) == doctest::Approx(2.0));
  CHECK(diameter(unit_square()) == doctest::Approx(std::sqrt(2.0)));
  CHECK(diameter(fuglede_counterexample(10).shape) == doctest::Approx(11.8622056838277516).epsilon(1e-9));
  CHECK(diameter(Stadium(0.5)) ==
        doctest::Approx(2.0 * (Stadium(0.5).half_length() + std::sin(0.5))).epsilon(1e-9));
}

TEST_CASE("hausdorff distance") {
  const auto disk = DiskSegmentComposite::disk(Point2::Zero(), 1.0);
  CHECK(hausdorff_distance(disk, disk) < 1e-12);
  CHECK(hausdorff_distance(disk, DiskSegmentComposite::disk(Point2::Zero(), 2.0)) ==
        doctest::Approx(1.0).epsilon(1e-3));
  CHECK(hausdorff_distance(disk, DiskSegmentComposite::disk(Point2(3, 0), 1.0)) ==
        doctest::Approx(3.0).epsilon(1e-3));
  // brute force over dense samples of two rectangles
  const Polygon a = Polygon::rectangle(Point2(0, 0), Point2(2, 1));
  const Polygon b = Polygon::rectangle(Point2(0.5, -0.3), Point2(1.5, 0.4));
  std::vector<Point2> pa, pb;
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j <= 100; ++j) pa.emplace_back(2.0 * i / 200, 1.0 * j / 100);
  }
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 70; ++j) pb.emplace_back(0.5 + 1.0 * i / 100, -0.3 + 0.7 * j / 70);
  }
  auto one_sided = [](const std::vector<Point2>& x, const std::vector<Point2>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = 1e300;
      for (const auto& q : y) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  const double brute = std::max(one_sided(pa, pb), one_sided(pb, pa));
  CHECK(hausdorff_distance(a, b) == doctest::Approx(brute).epsilon(2e-2));
}

TEST_CASE("normalize") {
  const auto sq = std::get<Polygon>(normalize(unit_square()));
  CHECK(area(sq) == doctest::Approx(kPi));
  CHECK(barycenter(sq).norm() < 1e-14);
  CHECK((sq.vertices()[1] - sq.vertices()[0]).norm() == doctest::Approx(std::sqrt(kPi)));
  const auto st = std::get<Stadium>(normalize(Stadium(0.575)));
  CHECK(st.theta() == 0.575);
  const auto d = std::get<DiskSegmentComposite>(normalize(DiskSegmentComposite::disk(Point2(1, 1), 2.0)));
  CHECK(d.disks()[0].radius == doctest::Approx(1.0));
  CHECK(d.disks()[0].center.norm() < 1e-14);
}

TEST_CASE("functionals are invariant under scaling and translation") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 12; ++i) {
    Shape s = i % 3 == 0 ? Shape(random_convex_polygon(rng))
              : i % 3 == 1 ? Shape(random_convex_radial(rng).placed(Point2(0.3, -2.0), 1.7))
                           : Shape(random_composite(rng));
    const Shape n = normalize(s);
    CHECK(std::abs(deficit(n) - deficit(s)) < 1e-9);
    CHECK(std::abs(barycentric_asymmetry(n) - barycentric_asymmetry(s)) < 1e-9);
    CHECK(std::abs(fraenkel_asymmetry(n).value - fraenkel_asymmetry(s).value) < 1e-6);
  }
}

TEST_CASE("diameter is at most half the perimeter") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i) {
    Shape s = i % 3 == 0 ? Shape(random_convex_polygon(rng))
              : i % 3 == 1 ? Shape(random_convex_radial(rng))
                           : Shape(random_composite(rng));
    CHECK(diameter(s) <= 0.5 * perimeter_minkowski(s) + 1e-9);
  }
  CHECK(diameter(dumbbell_shape()) <= 0.5 * perimeter_minkowski(dumbbell_shape()));
}

TEST_CASE("gradient estimate for convex nearly spherical sets") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 40; ++i) {
    const auto r = random_convex_radial(rng);
    const double u = r.samples().cwiseAbs().maxCoeff();
    const double du = r.derivative().cwiseAbs().maxCoeff();
    REQUIRE(u < 1.0);
    CHECK(du <= 2.0 * (1.0 + u) / (1.0 - u) * std::sqrt(u));
  }
}

TEST_CASE("invalid shapes are rejected") {
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), ValidationError);
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), ValidationError);  // bow tie
  CHECK_THROWS_AS(Polygon({{0, 0}, {0, 1}, {1, 0}}), ValidationError);          // clockwise
  CHECK_THROWS_AS(Polygon({{0, 0}, {NAN, 1}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(RadialShape(Eigen::VectorXd::Constant(16, -1.5)), ValidationError);
  CHECK_THROWS_AS(RadialShape(Eigen::VectorXd::Zero(15)), ValidationError);
  CHECK_THROWS_AS(RadialShape(Eigen::VectorXd::Zero(8)), ValidationError);
  CHECK_THROWS_AS(Stadium(0.0), ValidationError);
  CHECK_THROWS_AS(Stadium(2.0), ValidationError);
  CHECK_THROWS_AS(DiskSegmentComposite({{Point2(0, 0), 1.0}, {Point2(1, 0), 1.0}}, {}),
                  ValidationError);
  CHECK_THROWS_AS(DiskSegmentComposite({{Point2(0, 0), 1.0}}, {{Point2(5, 0), Point2(6, 0)}}),
                  ValidationError);
}

TEST_CASE("composite connectivity") {
  CHECK(dumbbell_shape().is_connected());
  CHECK_FALSE(fuglede_counterexample(5).shape.is_connected());
}
