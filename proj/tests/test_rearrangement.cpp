#include <doctest.h>

#include "iso/errors.hpp"
#include "iso/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace iso;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Non-increasing away from the center on both sides.
bool decreasing_from_center(const SampledFunction& f) {
  const auto& v = f.values();
  const int n = f.size();
  for (int i = n / 2; i + 1 < n; ++i) {
    if (v[i + 1] > v[i]) return false;
  }
  for (int i = n / 2 - 1; i > 0; --i) {
    if (v[i - 1] > v[i]) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("rearrangement of simple functions") {
  const auto c = SampledFunction::sample(1.0, 64, [](double) { return 2.5; });
  CHECK(decreasing_rearrangement(c).values() == c.values());

  // |x| on [-1, 1] becomes 1 - |x| up to the node pairing
  const auto f = SampledFunction::sample(1.0, 400, [](double x) { return std::abs(x); });
  const auto fs = decreasing_rearrangement(f);
  for (int i = 0; i < fs.size(); ++i) {
    CHECK(std::abs(fs.values()[i] - (1.0 - std::abs(fs.node(i)))) <= fs.step() + 1e-12);
  }

  // indicator of [0.2, 0.7] becomes the indicator of [-0.25, 0.25]
  const auto g = SampledFunction::sample(1.0, 400, [](double x) { return x > 0.2 && x < 0.7 ? 1.0 : 0.0; });
  const auto gs = decreasing_rearrangement(g);
  for (int i = 0; i < gs.size(); ++i) {
    const double x = gs.node(i);
    if (std::abs(x) < 0.25 - gs.step()) CHECK(gs.values()[i] == 1.0);
    if (std::abs(x) > 0.25 + gs.step()) CHECK(gs.values()[i] == 0.0);
  }
  CHECK(gs.values().sum() == g.values().sum());
}

TEST_CASE("rearrangement properties on random inputs") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd a(257), b(257);
    for (int i = 0; i < 257; ++i) {
      a[i] = normal(rng);
      b[i] = a[i] + std::abs(normal(rng));
    }
    const SampledFunction f(2.0, a), g(2.0, b);
    const auto fs = decreasing_rearrangement(f);
    const auto gs = decreasing_rearrangement(g);
    CHECK(decreasing_from_center(fs));
    CHECK(fs.values().maxCoeff() == a.maxCoeff());
    CHECK(fs.values()[128] == a.maxCoeff());
    // equimeasurable: same sorted values
    Eigen::VectorXd x = a, y = fs.values();
    std::sort(x.data(), x.data() + x.size());
    std::sort(y.data(), y.data() + y.size());
    CHECK(x == y);
    CHECK(std::abs(fs.integral() - f.integral()) < 1e-12);
    // f <= g  implies  f* <= g*
    CHECK((fs.values().array() <= gs.values().array()).all());
    // (f + c)* = f* + c
    const SampledFunction shifted(2.0, (a.array() + 0.75).matrix());
    CHECK((decreasing_rearrangement(shifted).values().array() - (fs.values().array() + 0.75))
              .abs()
              .maxCoeff() == 0.0);
  }
}

TEST_CASE("riesz pair") {
  const double T = 1.5;
  const auto one = SampledFunction::sample(T, 128, [](double) { return 1.0; });
  const auto p = riesz_pair(one, one, one);
  CHECK(p.lhs == doctest::Approx(4 * T * T).epsilon(1e-12));
  CHECK(p.rhs == doctest::Approx(4 * T * T).epsilon(1e-12));

  // symmetric decreasing inputs are fixed points
  const auto f = SampledFunction::sample(T, 256, [](double x) { return std::exp(-x * x); });
  const auto g = SampledFunction::sample(T, 256, [&](double x) { return 1.0 + std::cos(kPi * x / T); });
  const auto q = riesz_pair(f, g, f);
  CHECK(std::abs(q.lhs - q.rhs) <= q.tolerance);
  CHECK(q.holds());

  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto step = [&] {
      const double a = -T + 2 * T * unit(rng), b = -T + 2 * T * unit(rng);
      const double lo = std::min(a, b), hi = std::max(a, b), v = unit(rng);
      return SampledFunction::sample(T, 128, [=](double x) { return x > lo && x < hi ? v : 0.1 * v; });
    };
    const auto r = riesz_pair(step(), step(), step());
    CHECK(r.holds());
  }

  CHECK_THROWS_AS(riesz_pair(one, SampledFunction::sample(T, 64, [](double) { return 1.0; }), one),
                  ValidationError);
}

TEST_CASE("sampled function validation") {
  CHECK_THROWS_AS(SampledFunction(1.0, Eigen::VectorXd::Zero(7)), ValidationError);
  Eigen::VectorXd bad = Eigen::VectorXd::Zero(16);
  bad[3] = NAN;
  CHECK_THROWS_AS(SampledFunction(1.0, bad), ValidationError);
}
