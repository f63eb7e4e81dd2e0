#include <doctest.h>

#include "iso/errors.hpp"
#include "iso/families.hpp"
#include "iso/functionals.hpp"
#include "iso/variational.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <random>

using namespace iso;

namespace {

FourierProfile mode(int k, bool sine = false, int n = 16) {
  FourierProfile u;
  u.a = Eigen::VectorXd::Zero(n + 1);
  u.b = Eigen::VectorXd::Zero(n + 1);
  (sine ? u.b : u.a)[k] = 1.0;
  return u;
}

double quad(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

}  // namespace

TEST_CASE("green kernel and H") {
  CHECK(green_kernel(0.0) == 0.0);
  CHECK(std::abs(green_kernel(kPi)) < 1e-16);
  CHECK(std::abs(green_kernel(-kPi)) < 1e-16);
  CHECK(kernel_H(0.0) == doctest::Approx(0.238732414637843004).epsilon(1e-15));
  CHECK(kernel_H(kPi) == doctest::Approx(0.0795774715459476679).epsilon(1e-14));
  for (double x : {0.2, 1.1, 2.9}) {
    CHECK(kernel_H(x) == doctest::Approx(kernel_H(-x)).epsilon(1e-15));
    CHECK(kernel_H(x) == doctest::Approx(kernel_H(x + kTwoPi)).epsilon(1e-12));
  }
}

TEST_CASE("primitives of H") {
  // 30-digit adaptive quadrature references
  const double x[] = {0.3, 1.0, 2.5, 3.0};
  const double F[] = {0.0503510226327885089, 0.0442007133339744301, -0.0410448336362850703,
                      -0.0111549003731509028};
  const double K[] = {0.00858307159644393848, 0.0492965981218933573, 0.0251230432035338363,
                      0.0111702637621312334};
  for (int i = 0; i < 4; ++i) {
    CHECK(kernel_H_primitive(x[i]) == doctest::Approx(F[i]).epsilon(1e-12));
    CHECK(kernel_H_second_primitive(x[i]) == doctest::Approx(K[i]).epsilon(1e-12));
    CHECK(kernel_H_primitive(-x[i]) == doctest::Approx(-F[i]).epsilon(1e-12));
    CHECK(kernel_H_second_primitive(x[i] + kTwoPi) == doctest::Approx(K[i]).epsilon(1e-10));
  }
}

TEST_CASE("exact convolution and sign energy") {
  const std::vector<SignPiece> s{{0.3, 1.4, 1}, {1.4, 4.0, -1}, {4.0, 5.5, 1}};
  for (double th : {0.0, 1.0, 3.7}) {
    double direct = 0.0;
    for (const auto& p : s) {
      direct += p.value * quad([&](double t) { return kernel_H(th - t); }, p.a, p.b);
    }
    CHECK(convolve_H(s, th) == doctest::Approx(direct).epsilon(1e-11));
  }
  double energy = 0.0;
  for (const auto& p : s) {
    energy += p.value * quad([&](double th) { return convolve_H(s, th); }, p.a, p.b);
  }
  CHECK(sign_energy(s) == doctest::Approx(energy).epsilon(1e-10));

  // sign(cos 2θ): energy 2(4 - π), checked against kink-aware 20-digit quadrature
  const std::vector<SignPiece> sq{{0, kPi / 4, 1},          {kPi / 4, 3 * kPi / 4, -1},
                                  {3 * kPi / 4, 5 * kPi / 4, 1}, {5 * kPi / 4, 7 * kPi / 4, -1},
                                  {7 * kPi / 4, kTwoPi, 1}};
  CHECK(sign_energy(sq) == doctest::Approx(1.71681469282041352).epsilon(1e-13));
}

TEST_CASE("rayleigh quotient") {
  // ∫|u| comes from the linear interpolant on the 4096 grid, second order
  auto fine = mode(3);
  fine.grid = 16384;
  CHECK(std::abs(opepl_rayleigh(fine) - kPi / 2) < std::abs(opepl_rayleigh(mode(3)) - kPi / 2) / 10);
  CHECK(opepl_rayleigh(mode(2)) == doctest::Approx(3 * kPi / 16).epsilon(5e-6));
  CHECK(opepl_rayleigh(mode(3)) == doctest::Approx(kPi / 2).epsilon(5e-6));
  CHECK(opepl_rayleigh(mode(2, true)) == doctest::Approx(3 * kPi / 16).epsilon(5e-6));
  auto u = mode(2);
  u.a[5] = 0.3;
  u.b[7] = -0.2;
  auto v = u;
  v.a *= 5.0;
  v.b *= 5.0;
  CHECK(opepl_rayleigh(v) == doctest::Approx(opepl_rayleigh(u)).epsilon(1e-14));

  FourierProfile zero = mode(2);
  zero.a.setZero();
  CHECK_THROWS_AS(opepl_rayleigh(zero), ValidationError);
  auto bad = mode(2);
  bad.a[1] = 0.1;
  CHECK_THROWS_AS(opepl_rayleigh(bad), ValidationError);
  CHECK_THROWS_AS(opepl_rayleigh(mode(2, false, 6)), ValidationError);
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    FourierProfile u = mode(2);
    for (int k = 2; k <= 16; ++k) {
      u.a[k] = normal(rng) / k;
      u.b[k] = normal(rng) / k;
    }
    const auto g = opepl_gradient(u);
    const double h = 1e-6;
    for (int k = 2; k <= 16; k += 3) {
      auto p = u, m = u;
      p.a[k] += h;
      m.a[k] -= h;
      const double fd = (opepl_rayleigh(p) - opepl_rayleigh(m)) / (2 * h);
      CHECK(std::abs(fd - g.a[k]) <= 1e-5 * std::max(std::abs(g.a[k]), 1e-2));
    }
  }
}

TEST_CASE("fixed point solver") {
  const auto s = opepl_solve_fixedpoint(square_wave_sign(4096));
  CHECK(s.converged);
  CHECK(s.m == doctest::Approx(1.0 / (2.0 * (4.0 - kPi))).epsilon(1e-11));
  CHECK(s.switching_points.size() == 4);
  CHECK(s.norm_identity_gap() < 1e-6);
  CHECK(s.max_constraint_residual() < 1e-6);
  CHECK(std::abs(s.abs_integral - 1.0 / s.m) < 1e-8);
  CHECK_THROWS_AS(opepl_solve_fixedpoint(std::vector<int>(64, 2)), ValidationError);
  CHECK_THROWS_AS(opepl_solve_fixedpoint(square_wave_sign(64), 1.0), ValidationError);
}

TEST_CASE("fourier solver") {
  const auto f = opepl_solve_fourier(256, 4096, 32, 0);
  CHECK(f.m <= 3 * kPi / 16 + 1e-6);
  CHECK(f.m >= 0.5388 - 1e-3);
  CHECK(kPi / 4 * f.m > 0.41);
  CHECK(f.norm_identity_gap() < 1e-6);
  CHECK(f.max_constraint_residual() < 1e-6);
  CHECK(std::abs(f.abs_integral - 1.0 / f.m) < 1e-8);
  const auto p = opepl_solve_fixedpoint(square_wave_sign(4096));
  CHECK(std::abs(f.m - p.m) < 1e-3);
  // same seed, same answer
  CHECK(opepl_solve_fourier(64, 2048, 4, 9).m == opepl_solve_fourier(64, 2048, 4, 9).m);
  CHECK_THROWS_AS(opepl_solve_fourier(4, 4096, 1, 0), ValidationError);
  CHECK_THROWS_AS(opepl_solve_fourier(64, 512, 1, 0), ValidationError);
}

TEST_CASE("full functional on nearly spherical profiles") {
  double prev = 1e9;
  for (double eps : {0.05, 0.02, 0.01}) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(3), s = Eigen::VectorXd::Zero(3);
    c[2] = eps;
    const auto u = nearly_spherical(RadialShape::from_fourier(c, s, 4096));
    const double j = J_full(u);
    CHECK(j == doctest::Approx(deficit(u) / std::pow(barycentric_asymmetry(u), 2)).epsilon(1e-6));
    CHECK(j > 0.41);
    CHECK(j < prev);
    prev = j;
  }
  CHECK_THROWS_AS(J_full(RadialShape(Eigen::VectorXd::Zero(64))), ConstraintError);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(3), s = Eigen::VectorXd::Zero(3);
  c[1] = 0.05;
  CHECK_THROWS_AS(J_full(RadialShape::from_fourier(c, s, 1024)), ConstraintError);
}

TEST_CASE("periodic ODE") {
  const int n = 4096;
  const auto r = SampledFunction::sample(kPi, n, [](double t) { return std::cos(2 * t); });
  const auto h = solve_ode_periodic(r);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(h.values()[i] + std::cos(2 * h.node(i)) / 3.0));
  }
  CHECK(worst < 1e-6);
  // h'' + h - R by second differences
  double fd = 0.0;
  const double dt = h.step();
  for (int i = 0; i < n; ++i) {
    const double d2 = (h.values()[(i + 1) % n] - 2 * h.values()[i] + h.values()[(i + n - 1) % n]) / (dt * dt);
    fd = std::max(fd, std::abs(d2 + h.values()[i] - r.values()[i]));
  }
  CHECK(fd < 1e-4);

  const auto z = solve_ode_periodic(SampledFunction(kPi, Eigen::VectorXd::Zero(256)));
  CHECK(z.values().cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(solve_ode_periodic(SampledFunction::sample(kPi, 256, [](double t) { return std::cos(t); })),
                  ConstraintError);
  CHECK_THROWS_AS(solve_ode_periodic(SampledFunction(1.0, Eigen::VectorXd::Zero(256))), ValidationError);
}

TEST_CASE("square-root lower bound used in the limit argument") {
  for (int i = 0; i <= 10000; ++i) {
    const double r = -0.5 + i / 10000.0;
    CHECK(std::sqrt(1 + r) >= 1 + r / 2 - r * r / 8 + r * r * r / 16 - std::pow(r, 4) / 8 - 1e-15);
  }
}
