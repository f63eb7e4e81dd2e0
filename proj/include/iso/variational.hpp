#pragma once

// Linearized problem: minimize ∫(u'^2 - u^2) / (∫|u|)^2 over 2π-periodic u
// orthogonal to 1, cos, sin. Its value m, the kernel H characterizing the
// minimizer, the full nonlinear functional J and a periodic ODE solver.

#include "iso/geometry.hpp"
#include "iso/rearrangement.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace iso {

template <class T>
T wrap_to_pi(T x) {
  T r = std::fmod(x + T(kPi), T(kTwoPi));
  if (r < T(0)) r += T(kTwoPi);
  return r - T(kPi);
}

// G(t) = (1 - |t|/π) sin|t| / 2 on [-π, π], extended 2π-periodically.
// h = G * R solves h'' + h = R for R orthogonal to cos and sin.
template <class T>
T green_kernel(T t) {
  const T a = std::abs(wrap_to_pi(t));
  return T(0.5) * (T(1) - a / T(kPi)) * std::sin(a);
}

// H(x) = -G(x) + 1/(2π) + cos(x)/(4π).
template <class T>
T kernel_H(T x) {
  return -green_kernel(x) + T(1) / T(kTwoPi) + std::cos(x) / T(4.0 * kPi);
}

// F(x) = ∫_0^x H, odd and 2π-periodic.
double kernel_H_primitive(double x);
// K(x) = ∫_0^x F, even and 2π-periodic.
double kernel_H_second_primitive(double x);

// Piecewise constant function on [0, 2π] with values in {-1, 0, 1}.
struct SignPiece {
  double a;
  double b;
  int value;
};

// (H * s)(θ) = ∫ s(t) H(θ - t) dt, exact.
double convolve_H(const std::vector<SignPiece>& s, double theta);
// ∫∫ s(θ) H(θ - t) s(t) dt dθ, exact.
double sign_energy(const std::vector<SignPiece>& s);

// Coefficient vectors indexed by harmonic k = 0..N; entries 0 and 1 must be 0.
struct FourierProfile {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  int grid = 4096;
  int harmonics() const { return static_cast<int>(a.size()) - 1; }
};

// π Σ (k^2 - 1)(a_k^2 + b_k^2) / (∫|u|)^2 with ∫|u| by periodic trapezoid on
// the profile grid (sign-change cells integrated exactly for the linear
// interpolant).
double opepl_rayleigh(const FourierProfile& u);

struct FourierGradient {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
};
FourierGradient opepl_gradient(const FourierProfile& u);

struct VariationalSolution {
  std::string method;
  Eigen::VectorXd u0;  // samples at θ_k = 2πk/M
  double m = 0.0;
  std::vector<int> sign_pattern;
  std::vector<double> switching_points;
  double multiplier0 = 0.0;
  double multiplier1 = 0.0;
  double multiplier2 = 0.0;
  double residual_mean = 0.0;  // ∫ u0
  double residual_cos = 0.0;   // ∫ u0 cos
  double residual_sin = 0.0;   // ∫ u0 sin
  double residual_periodic = 0.0;
  double abs_integral = 0.0;   // ∫ |u0|
  double sign_energy = 0.0;    // ∫∫ sgn(u0) H sgn(u0)
  int iterations = 0;
  bool converged = false;

  double norm_identity_gap() const { return std::abs(abs_integral - sign_energy); }
  double max_constraint_residual() const;
};

// Preconditioned gradient descent with Armijo steps from `restarts` seeded
// random starts; the best run is re-evaluated exactly (zeros of the trig
// polynomial, closed-form ∫|u|).
VariationalSolution opepl_solve_fourier(int harmonics = 256, int grid = 4096, int restarts = 32,
                                        std::uint64_t seed = 0);

// Iterates s <- sign(H * s) in the continuum, with the update
// sign((1 - damping) s_new + damping s_old). `init_sign` is sampled at
// θ_k = 2πk/M, M = init_sign.size().
VariationalSolution opepl_solve_fixedpoint(const std::vector<int>& init_sign,
                                           double damping = 0.5, int max_iter = 500);

// sign(cos 2θ) on the M-grid.
std::vector<int> square_wave_sign(int grid);

// (π/2) ∫[sqrt((1+u)^2 + u'^2) - 1] / (½ ∫|(1+u)^2 - 1|)^2 for a profile
// satisfying the area and barycenter constraints to 1e-6.
double J_full(const RadialShape& u);

// h(θ) = ∫ G(t) R(θ + t) dt by circular convolution; R must be sampled on
// [-π, π] and orthogonal to cos and sin to 1e-8.
SampledFunction solve_ode_periodic(const SampledFunction& r);

}  // namespace iso
