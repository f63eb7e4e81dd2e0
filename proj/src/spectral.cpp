#include "iso/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>

namespace iso::spectral {

Eigen::VectorXcd dft(const Eigen::VectorXd& samples) {
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out;
  fft.fwd(out, samples);
  return out;
}

Eigen::VectorXd idft_real(const Eigen::VectorXcd& spectrum) {
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out;
  fft.inv(out, spectrum);
  return out.real();
}

void coefficients(const Eigen::VectorXd& samples, Eigen::VectorXd& c, Eigen::VectorXd& s) {
  const Eigen::Index m = samples.size();
  const Eigen::Index half = m / 2;
  const Eigen::VectorXcd x = dft(samples);
  const double inv_m = 1.0 / static_cast<double>(m);
  c = Eigen::VectorXd::Zero(half + 1);
  s = Eigen::VectorXd::Zero(half + 1);
  c[0] = x[0].real() * inv_m;
  for (Eigen::Index k = 1; k < half; ++k) {
    c[k] = 2.0 * x[k].real() * inv_m;
    s[k] = -2.0 * x[k].imag() * inv_m;
  }
  if (m % 2 == 0) {
    c[half] = x[half].real() * inv_m;
  } else {
    c[half] = 2.0 * x[half].real() * inv_m;
    s[half] = -2.0 * x[half].imag() * inv_m;
  }
}

Eigen::VectorXd synthesize(const Eigen::VectorXd& c, const Eigen::VectorXd& s, int grid_size,
                           int order) {
  const Eigen::Index m = grid_size;
  const Eigen::Index kmax = std::min<Eigen::Index>(c.size() - 1, m / 2);
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(m);
  const double dm = static_cast<double>(m);
  for (Eigen::Index k = 0; k <= kmax; ++k) {
    // derivative of cos(k t), sin(k t) of the given order, as a complex factor (ik)^order
    std::complex<double> a(c[k], -s[k]);  // c cos + s sin = Re[(c - i s) e^{ikt}]
    if (order > 0) {
      if (k == 0) continue;
      if (m % 2 == 0 && k == m / 2) continue;  // Nyquist mode has no derivative on the grid
      a *= std::pow(std::complex<double>(0.0, static_cast<double>(k)), order);
    }
    if (k == 0) {
      x[0] += a.real() * dm;
    } else if (m % 2 == 0 && k == m / 2) {
      x[k] += a.real() * dm;
    } else {
      x[k] += 0.5 * dm * a;
      x[m - k] += 0.5 * dm * std::conj(a);
    }
  }
  return idft_real(x);
}

double evaluate(const Eigen::VectorXd& c, const Eigen::VectorXd& s, double theta, int order) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const double kd = static_cast<double>(k);
    const double ck = std::cos(kd * theta);
    const double sk = std::sin(kd * theta);
    switch (order) {
      case 0:
        sum += c[k] * ck + s[k] * sk;
        break;
      case 1:
        sum += kd * (-c[k] * sk + s[k] * ck);
        break;
      case 2:
        sum += -kd * kd * (c[k] * ck + s[k] * sk);
        break;
      default:
        break;
    }
  }
  return sum;
}

Eigen::VectorXd circular_convolution(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXcd fa = dft(a);
  const Eigen::VectorXcd fb = dft(b);
  return idft_real(fa.cwiseProduct(fb));
}

double periodic_abs_integral(const Eigen::VectorXd& f) {
  const Eigen::Index m = f.size();
  const double h = 2.0 * 3.14159265358979323846 / static_cast<double>(m);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const double f0 = f[k];
    const double f1 = f[(k + 1) % m];
    if ((f0 > 0.0 && f1 < 0.0) || (f0 < 0.0 && f1 > 0.0)) {
      sum += 0.5 * (f0 * f0 + f1 * f1) / std::abs(f0 - f1);
    } else {
      sum += 0.5 * (std::abs(f0) + std::abs(f1));
    }
  }
  return sum * h;
}

}  // namespace iso::spectral
