#pragma once

// Real trigonometric series on the uniform periodic grid theta_j = 2 pi j / M.
//   u(theta) = sum_{k=0}^{K} c[k] cos(k theta) + s[k] sin(k theta),  K < M/2
// (the Nyquist cosine mode is kept for interpolation when K == M/2).

#include <Eigen/Dense>

#include <complex>

namespace iso::spectral {

Eigen::VectorXcd dft(const Eigen::VectorXd& samples);
Eigen::VectorXd idft_real(const Eigen::VectorXcd& spectrum);

// Coefficients c, s (length M/2 + 1) of the trigonometric interpolant.
void coefficients(const Eigen::VectorXd& samples, Eigen::VectorXd& c, Eigen::VectorXd& s);

// Values of the series (or its `order`-th derivative) on the M-grid.
Eigen::VectorXd synthesize(const Eigen::VectorXd& c, const Eigen::VectorXd& s, int grid_size,
                           int order = 0);

// Single-point evaluation of the series or one of its derivatives.
double evaluate(const Eigen::VectorXd& c, const Eigen::VectorXd& s, double theta, int order = 0);

// Periodic convolution  (a * b)_i = sum_j a_{i-j} b_j  (no grid-step factor).
Eigen::VectorXd circular_convolution(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Trapezoid weights times samples on a periodic grid of period 2 pi.
inline double periodic_integral(const Eigen::VectorXd& values) {
  return values.sum() * (2.0 * 3.14159265358979323846 / static_cast<double>(values.size()));
}

// Periodic trapezoid integral of |f|. Cells where f changes sign integrate
// the absolute value of the linear interpolant exactly.
double periodic_abs_integral(const Eigen::VectorXd& f);

}  // namespace iso::spectral
