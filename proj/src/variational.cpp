#include "iso/variational.hpp"

#include "iso/errors.hpp"
#include "iso/families.hpp"
#include "iso/roots.hpp"
#include "iso/spectral.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace iso {

double kernel_H_primitive(double x) {
  const double w = wrap_to_pi(x);
  const double y = std::abs(w);
  const double gp = 0.5 * (1.0 - std::cos(y)) - (std::sin(y) - y * std::cos(y)) / kTwoPi;
  const double sg = (w > 0.0) - (w < 0.0);
  return -sg * gp + w / kTwoPi + std::sin(w) / (4.0 * kPi);
}

double kernel_H_second_primitive(double x) {
  const double y = std::abs(wrap_to_pi(x));
  const double g2 = 0.5 * (y - std::sin(y)) + (2.0 * std::cos(y) + y * std::sin(y) - 2.0) / kTwoPi;
  return -g2 + y * y / (4.0 * kPi) + (1.0 - std::cos(y)) / (4.0 * kPi);
}

double convolve_H(const std::vector<SignPiece>& s, double theta) {
  double sum = 0.0;
  for (const SignPiece& p : s) {
    if (p.value == 0) continue;
    sum += p.value * (kernel_H_primitive(theta - p.a) - kernel_H_primitive(theta - p.b));
  }
  return sum;
}

double sign_energy(const std::vector<SignPiece>& s) {
  const auto k = kernel_H_second_primitive;
  double sum = 0.0;
  for (const SignPiece& p : s) {
    if (p.value == 0) continue;
    for (const SignPiece& q : s) {
      if (q.value == 0) continue;
      // θ in p, t in q.
      sum += p.value * q.value * (k(p.b - q.a) - k(p.a - q.a) - k(p.b - q.b) + k(p.a - q.b));
    }
  }
  return sum;
}

double VariationalSolution::max_constraint_residual() const {
  return std::max({std::abs(residual_mean), std::abs(residual_cos), std::abs(residual_sin),
                   std::abs(residual_periodic)});
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// ∫ f over [0, 2π] with Gauss-Legendre on every piece between `breaks`.
template <class F>
double integrate_between(const std::vector<double>& breaks, F&& f) {
  using boost::math::quadrature::gauss;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (!(b > a)) continue;
    const int chunks = std::max(1, static_cast<int>(std::ceil((b - a) / 0.1)));
    for (int c = 0; c < chunks; ++c) {
      const double lo = a + (b - a) * c / chunks;
      const double hi = a + (b - a) * (c + 1) / chunks;
      total += gauss<double, 20>::integrate(f, lo, hi);
    }
  }
  return total;
}

std::vector<SignPiece> coalesce(const std::vector<SignPiece>& in) {
  std::vector<SignPiece> out;
  for (const SignPiece& p : in) {
    if (!(p.b > p.a)) continue;
    if (!out.empty() && out.back().value == p.value) {
      out.back().b = p.b;
    } else {
      out.push_back(p);
    }
  }
  return out;
}

int value_at(const std::vector<SignPiece>& s, double theta) {
  for (const SignPiece& p : s) {
    if (theta >= p.a && theta < p.b) return p.value;
  }
  return s.empty() ? 0 : s.back().value;
}

std::vector<SignPiece> pieces_from_grid(const std::vector<int>& sign) {
  const int m = static_cast<int>(sign.size());
  const double h = kTwoPi / m;
  std::vector<SignPiece> pieces;
  pieces.push_back({0.0, 0.5 * h, sign[0]});
  for (int k = 1; k < m; ++k) pieces.push_back({(k - 0.5) * h, (k + 0.5) * h, sign[k]});
  pieces.push_back({kTwoPi - 0.5 * h, kTwoPi, sign[0]});
  return coalesce(pieces);
}

std::vector<double> interior_breaks(const std::vector<SignPiece>& s) {
  std::vector<double> out;
  for (std::size_t i = 1; i < s.size(); ++i) out.push_back(s[i].a);
  return out;
}

std::vector<double> with_ends(std::vector<double> breaks) {
  breaks.insert(breaks.begin(), 0.0);
  breaks.push_back(kTwoPi);
  return breaks;
}

// Zeros of a periodic function sampled on `grid` points, refined by bisection.
template <class F>
std::vector<double> periodic_zeros(F&& f, int grid) {
  const double h = kTwoPi / grid;
  std::vector<double> values(static_cast<std::size_t>(grid) + 1);
  for (int k = 0; k <= grid; ++k) values[static_cast<std::size_t>(k)] = f(k * h);
  std::vector<double> zeros;
  for (int k = 0; k < grid; ++k) {
    const double f0 = values[static_cast<std::size_t>(k)];
    const double f1 = values[static_cast<std::size_t>(k) + 1];
    if (f0 == 0.0) {
      if (k > 0) zeros.push_back(k * h);
      continue;
    }
    if (f1 != 0.0 && sign_of(f0) != sign_of(f1)) {
      zeros.push_back(bisect(f, k * h, (k + 1) * h, 1e-15));
    }
  }
  return zeros;
}

template <class F>
std::vector<SignPiece> pieces_from_zeros(const std::vector<double>& zeros, F&& f) {
  const std::vector<double> b = with_ends(zeros);
  std::vector<SignPiece> out;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    out.push_back({b[i], b[i + 1], sign_of(f(0.5 * (b[i] + b[i + 1])))});
  }
  return coalesce(out);
}

std::vector<SignPiece> damped_merge(const std::vector<SignPiece>& old_s,
                                    const std::vector<SignPiece>& new_s, double damping) {
  std::vector<double> b = interior_breaks(old_s);
  const std::vector<double> nb = interior_breaks(new_s);
  b.insert(b.end(), nb.begin(), nb.end());
  std::sort(b.begin(), b.end());
  b = with_ends(b);
  std::vector<SignPiece> out;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double mid = 0.5 * (b[i] + b[i + 1]);
    const double v = (1.0 - damping) * value_at(new_s, mid) + damping * value_at(old_s, mid);
    out.push_back({b[i], b[i + 1], sign_of(v)});
  }
  return coalesce(out);
}

bool same_pattern(const std::vector<SignPiece>& a, const std::vector<SignPiece>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].value != b[i].value) return false;
    if (std::abs(a[i].a - b[i].a) > tol || std::abs(a[i].b - b[i].b) > tol) return false;
  }
  return true;
}

// Fills everything derived from the sign function s and a callable u0.
template <class U>
void finish_solution(VariationalSolution& out, const std::vector<SignPiece>& s, U&& u0, int grid) {
  const std::vector<double> breaks = with_ends(interior_breaks(s));
  out.switching_points = interior_breaks(s);
  out.abs_integral = integrate_between(breaks, [&](double t) { return std::abs(u0(t)); });
  out.sign_energy = sign_energy(s);
  out.m = 1.0 / out.abs_integral;
  out.residual_mean = integrate_between(breaks, [&](double t) { return u0(t); });
  out.residual_cos = integrate_between(breaks, [&](double t) { return u0(t) * std::cos(t); });
  out.residual_sin = integrate_between(breaks, [&](double t) { return u0(t) * std::sin(t); });
  out.residual_periodic = std::abs(u0(0.0) - u0(kTwoPi));
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (const SignPiece& p : s) {
    m0 += p.value * (p.b - p.a);
    m1 += p.value * (std::sin(p.b) - std::sin(p.a));
    m2 += p.value * (std::cos(p.a) - std::cos(p.b));
  }
  out.multiplier0 = -m0 / kTwoPi;
  out.multiplier1 = -m1 / kPi;
  out.multiplier2 = -m2 / kPi;
  out.u0.resize(grid);
  out.sign_pattern.resize(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) {
    const double t = kTwoPi * k / grid;
    out.u0[k] = u0(t);
    out.sign_pattern[static_cast<std::size_t>(k)] = value_at(s, t);
  }
}

void validate_profile(const FourierProfile& u) {
  if (u.a.size() != u.b.size()) throw ValidationError("cosine and sine lists differ in length");
  if (u.harmonics() < 8) throw ValidationError("Fourier profile needs N >= 8 harmonics");
  if (u.grid <= 2 * u.harmonics() || u.grid % 2 != 0) {
    throw ValidationError("grid must be even and exceed twice the harmonic count");
  }
  if (!u.a.allFinite() || !u.b.allFinite()) throw ValidationError("non-finite coefficients");
  if (u.a[0] != 0.0 || u.a[1] != 0.0 || u.b[0] != 0.0 || u.b[1] != 0.0) {
    throw ValidationError("harmonics 0 and 1 must vanish");
  }
}

double numerator(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double sum = 0.0;
  for (Eigen::Index k = 2; k < a.size(); ++k) {
    const double kk = static_cast<double>(k * k) - 1.0;
    sum += kk * (a[k] * a[k] + b[k] * b[k]);
  }
  return kPi * sum;
}

// Derivative of spectral::periodic_abs_integral with respect to each sample.
Eigen::VectorXd abs_integral_weights(const Eigen::VectorXd& f) {
  const Eigen::Index m = f.size();
  const double h = kTwoPi / static_cast<double>(m);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index k1 = (k + 1) % m;
    const double f0 = f[k];
    const double f1 = f[k1];
    if ((f0 > 0.0 && f1 < 0.0) || (f0 < 0.0 && f1 > 0.0)) {
      const double d = f0 - f1;
      const double sg = d > 0.0 ? 1.0 : -1.0;
      const double q = f0 * f0 + f1 * f1;
      w[k] += (2.0 * f0 * d - q) / (2.0 * sg * d * d);
      w[k1] += (2.0 * f1 * d + q) / (2.0 * sg * d * d);
    } else {
      w[k] += 0.5 * sign_of(f0);
      w[k1] += 0.5 * sign_of(f1);
    }
  }
  return w * h;
}

struct RayleighEval {
  double value;
  double num;
  double den;
  Eigen::VectorXd u;
};

RayleighEval rayleigh_eval(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int grid) {
  RayleighEval e;
  e.u = spectral::synthesize(a, b, grid);
  e.num = numerator(a, b);
  e.den = spectral::periodic_abs_integral(e.u);
  e.value = e.den > 0.0 ? e.num / (e.den * e.den) : std::numeric_limits<double>::infinity();
  return e;
}

FourierGradient rayleigh_gradient(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int grid,
                                  const RayleighEval& e) {
  const Eigen::VectorXcd x = spectral::dft(abs_integral_weights(e.u));
  FourierGradient g{Eigen::VectorXd::Zero(a.size()), Eigen::VectorXd::Zero(b.size())};
  const double d2 = e.den * e.den;
  const double d3 = d2 * e.den;
  for (Eigen::Index k = 2; k < a.size(); ++k) {
    const double kk = static_cast<double>(k * k) - 1.0;
    const double dda = x[k % grid].real();
    const double ddb = -x[k % grid].imag();
    g.a[k] = 2.0 * kPi * kk * a[k] / d2 - 2.0 * e.num / d3 * dda;
    g.b[k] = 2.0 * kPi * kk * b[k] / d2 - 2.0 * e.num / d3 * ddb;
  }
  return g;
}

}  // namespace

double opepl_rayleigh(const FourierProfile& u) {
  validate_profile(u);
  const RayleighEval e = rayleigh_eval(u.a, u.b, u.grid);
  if (!(e.den > 0.0)) throw ValidationError("zero profile");
  return e.value;
}

FourierGradient opepl_gradient(const FourierProfile& u) {
  validate_profile(u);
  const RayleighEval e = rayleigh_eval(u.a, u.b, u.grid);
  if (!(e.den > 0.0)) throw ValidationError("zero profile");
  return rayleigh_gradient(u.a, u.b, u.grid, e);
}

VariationalSolution opepl_solve_fourier(int harmonics, int grid, int restarts, std::uint64_t seed) {
  if (harmonics < 8) throw ValidationError("need at least 8 harmonics");
  if (grid < 1024 || grid % 2 != 0 || grid <= 2 * harmonics) {
    throw ValidationError("grid must be even, >= 1024 and exceed twice the harmonic count");
  }
  if (restarts < 1) throw ValidationError("need at least one restart");
  constexpr int kMaxIter = 4000;

  const int n = harmonics + 1;
  Eigen::VectorXd precond = Eigen::VectorXd::Ones(n);
  for (int k = 2; k < n; ++k) precond[k] = 1.0 / (k * k - 1.0);

  Eigen::VectorXd best_a, best_b;
  double best_value = std::numeric_limits<double>::infinity();
  int best_iters = 0;
  bool best_converged = false;
  for (int r = 0; r < restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (int k = 2; k < n; ++k) {
      a[k] = normal(rng) / (k * k);
      b[k] = normal(rng) / (k * k);
    }
    auto renormalize = [&]() {
      const double s = std::sqrt(numerator(a, b) / kPi);
      a /= s;
      b /= s;
    };
    renormalize();
    RayleighEval e = rayleigh_eval(a, b, grid);
    double t = 1.0;
    int stall = 0;
    int it = 0;
    bool converged = false;
    for (; it < kMaxIter; ++it) {
      const FourierGradient g = rayleigh_gradient(a, b, grid, e);
      const Eigen::VectorXd da = -g.a.cwiseProduct(precond);
      const Eigen::VectorXd db = -g.b.cwiseProduct(precond);
      const double slope = g.a.dot(da) + g.b.dot(db);
      if (!(slope < -1e-30)) {
        converged = true;
        break;
      }
      t = std::min(2.0 * t, 1e3);
      RayleighEval trial;
      Eigen::VectorXd ta, tb;
      for (;;) {
        ta = a + t * da;
        tb = b + t * db;
        trial = rayleigh_eval(ta, tb, grid);
        if (trial.value <= e.value + 1e-4 * t * slope) break;
        t *= 0.5;
        if (t < 1e-14) break;
      }
      if (t < 1e-14) {
        converged = true;
        break;
      }
      const double decrease = e.value - trial.value;
      a = ta;
      b = tb;
      renormalize();
      e = rayleigh_eval(a, b, grid);
      stall = (decrease < 1e-14 * e.value) ? stall + 1 : 0;
      if (stall >= 5) {
        converged = true;
        break;
      }
    }
    if (e.value < best_value) {
      best_value = e.value;
      best_a = a;
      best_b = b;
      best_iters = it;
      best_converged = converged;
    }
  }

  // Exact re-evaluation of the best trigonometric polynomial.
  auto u = [&](double t) { return spectral::evaluate(best_a, best_b, t); };
  auto primitive = [&](double t) {
    double s = 0.0;
    for (int k = 2; k < n; ++k) s += (best_a[k] * std::sin(k * t) - best_b[k] * std::cos(k * t)) / k;
    return s;
  };
  const std::vector<double> zeros = periodic_zeros(u, grid);
  const std::vector<double> breaks = with_ends(zeros);
  double d_exact = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    d_exact += std::abs(primitive(breaks[i + 1]) - primitive(breaks[i]));
  }
  const double m = numerator(best_a, best_b) / (d_exact * d_exact);
  const double scale = 1.0 / (d_exact * m);
  const std::vector<SignPiece> s = pieces_from_zeros(zeros, u);

  VariationalSolution out;
  out.method = "fourier";
  finish_solution(out, s, [&](double t) { return scale * u(t); }, grid);
  out.m = m;
  out.iterations = best_iters;
  out.converged = best_converged;
  return out;
}

std::vector<int> square_wave_sign(int grid) {
  std::vector<int> s(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) {
    s[static_cast<std::size_t>(k)] = std::cos(2.0 * kTwoPi * k / grid) >= 0.0 ? 1 : -1;
  }
  return s;
}

VariationalSolution opepl_solve_fixedpoint(const std::vector<int>& init_sign, double damping,
                                           int max_iter) {
  const int grid = static_cast<int>(init_sign.size());
  if (grid < 16) throw ValidationError("initial sign pattern needs at least 16 samples");
  for (int v : init_sign) {
    if (v != 1 && v != -1) throw ValidationError("initial sign pattern must be +1/-1");
  }
  if (!(damping >= 0.0 && damping < 1.0)) throw ValidationError("damping must lie in [0, 1)");

  std::vector<SignPiece> s = pieces_from_grid(init_sign);
  std::vector<SignPiece> prev_new;
  bool converged = false;
  int it = 0;
  for (; it < max_iter; ++it) {
    auto u = [&s](double t) { return convolve_H(s, t); };
    const std::vector<double> zeros = periodic_zeros(u, grid);
    if (zeros.empty()) throw ConstraintError("sign iteration collapsed to a constant sign");
    const std::vector<SignPiece> next = pieces_from_zeros(zeros, u);
    if (same_pattern(next, s, 1e-12) || (!prev_new.empty() && same_pattern(next, prev_new, 1e-12))) {
      s = next;
      converged = true;
      break;
    }
    prev_new = next;
    s = damped_merge(s, next, damping);
  }

  VariationalSolution out;
  out.method = "fixedpoint";
  finish_solution(out, s, [&s](double t) { return convolve_H(s, t); }, grid);
  out.iterations = it;
  out.converged = converged;
  return out;
}

double J_full(const RadialShape& shape) {
  const Eigen::VectorXd& u = shape.samples();
  const NlResiduals res = nl_residuals(u);
  if (!(res.max_abs() < 1e-6)) {
    throw ConstraintError("profile violates the area/barycenter constraints");
  }
  const Eigen::ArrayXd one = 1.0 + u.array();
  const Eigen::ArrayXd du = shape.derivative().array();
  const double perim = spectral::periodic_integral((one.square() + du.square()).sqrt().matrix());
  const double sym = 0.5 * spectral::periodic_abs_integral((one.square() - 1.0).matrix());
  if (!(sym > 1e-14)) throw ConstraintError("profile is the unit disk; J is undefined");
  return 0.5 * kPi * (perim - kTwoPi) / (sym * sym);
}

SampledFunction solve_ode_periodic(const SampledFunction& r) {
  if (std::abs(r.half_width() - kPi) > 1e-12) {
    throw ValidationError("right-hand side must be sampled on [-pi, pi]");
  }
  const int n = r.size();
  const double h = r.step();
  double ic = 0.0;
  double is = 0.0;
  for (int i = 0; i < n; ++i) {
    ic += r.values()[i] * std::cos(r.node(i));
    is += r.values()[i] * std::sin(r.node(i));
  }
  ic *= h;
  is *= h;
  const double scale = std::max(1.0, r.values().cwiseAbs().maxCoeff());
  if (std::abs(ic) > 1e-8 * scale || std::abs(is) > 1e-8 * scale) {
    throw ConstraintError("right-hand side is not orthogonal to cos and sin");
  }
  Eigen::VectorXd g(n);
  for (int j = 0; j < n; ++j) g[j] = green_kernel(j * h);
  return SampledFunction(kPi, h * spectral::circular_convolution(g, r.values()));
}

}  // namespace iso
