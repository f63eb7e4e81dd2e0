#include <doctest.h>

#include "iso/barrier.hpp"
#include "iso/rearrangement.hpp"
#include "iso/variational.hpp"

#include <cmath>

using namespace iso;

TEST_CASE("barrier equals H up to the first node and dominates it") {
  const BarrierNodes nodes;
  for (int i = 0; i <= 100; ++i) {
    const double x = nodes.x1 * i / 100.0;
    CHECK(barrier_M(x) == kernel_H(x));
  }
  const auto c = barrier_check(10000);
  CHECK(c.min_gap >= 0.0);
  CHECK(c.min_star_gap >= -1e-12);
  // continuity at the nodes
  for (double x : {nodes.x1, nodes.x2, nodes.x3, nodes.x4, nodes.x5}) {
    CHECK(std::abs(barrier_M(x - 1e-9) - barrier_M(x + 1e-9)) < 1e-6);
  }
}

TEST_CASE("level measure is non-increasing") {
  double prev = barrier_level_measure(-1.0);
  CHECK(prev == doctest::Approx(kPi));
  for (int i = 0; i <= 2000; ++i) {
    const double t = -0.12 + 0.36 * i / 2000.0;
    const double m = barrier_level_measure(t);
    CHECK(m <= prev + 1e-14);
    prev = m;
  }
  CHECK(barrier_level_measure(1.0) == 0.0);
}

TEST_CASE("rearrangements agree with a sort-based oracle") {
  // even extension on [-π, π]; its symmetric rearrangement is M*(|x|)
  const int n = 40000;
  const auto m = SampledFunction::sample(kPi, n, [](double x) { return barrier_M(std::abs(x)); });
  const auto h = SampledFunction::sample(kPi, n, [](double x) { return kernel_H(std::abs(x)); });
  const auto ms = decreasing_rearrangement(m);
  const auto hs = decreasing_rearrangement(h);
  double integral = 0.0;
  for (int i = n / 2; i < n; ++i) {
    const double x = ms.node(i);
    CHECK(std::abs(ms.values()[i] - barrier_M_star(x)) < 2e-4);
    CHECK(std::abs(hs.values()[i] - kernel_H_star(x)) < 2e-4);
    integral += (kPi - x) * ms.values()[i] * ms.step();
  }
  CHECK(integral == doctest::Approx(barrier_integral()).epsilon(1e-5));
}

TEST_CASE("barrier integral and the bound on m") {
  // numpy reference: sort of M on 4e6 midpoints
  CHECK(barrier_integral() == doctest::Approx(0.2368500586805426).epsilon(1e-8));
  CHECK(m_lower_bound() == doctest::Approx(0.5277600550169036).epsilon(1e-8));
  CHECK(kPi / 4 * m_lower_bound() > 0.41);
  CHECK(barrier_M_star(0.5) == doctest::Approx(0.0776717035104468).epsilon(1e-6));
  CHECK(barrier_M_star(2.0) == doctest::Approx(-0.04667837299214704).epsilon(1e-6));
  CHECK(kernel_H_star(1.0) == doctest::Approx(0.045290990397349074).epsilon(1e-6));
}

TEST_CASE("kernel table") {
  const auto csv = kernel_table_csv(11);
  CHECK(csv.rfind("x,H,M,H_star,M_star\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
}
