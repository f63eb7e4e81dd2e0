#pragma once

// Symmetric decreasing rearrangement on [-T, T] and the Riesz triple integral.

#include <Eigen/Dense>

namespace iso {

// Values at the cell-centered nodes x_i = -T + (i + 1/2) h, h = 2T / n.
class SampledFunction {
 public:
  SampledFunction(double half_width, Eigen::VectorXd values);

  template <class F>
  static SampledFunction sample(double half_width, int n, F&& f) {
    Eigen::VectorXd v(n);
    const double h = 2.0 * half_width / n;
    for (int i = 0; i < n; ++i) v[i] = f(-half_width + (i + 0.5) * h);
    return SampledFunction(half_width, std::move(v));
  }

  double half_width() const { return half_width_; }
  const Eigen::VectorXd& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  double step() const { return 2.0 * half_width_ / static_cast<double>(values_.size()); }
  double node(int i) const { return -half_width_ + (i + 0.5) * step(); }

  // Midpoint rule.
  double integral() const { return values_.sum() * step(); }

  // 2T-periodic linear interpolation between nodes.
  double periodic_at(double x) const;

 private:
  double half_width_;
  Eigen::VectorXd values_;
};

// Values sorted in decreasing order (ties by node index) and laid out from the
// center outward, alternating right and left. The result is a permutation of
// the input, so level-set measures are preserved exactly.
SampledFunction decreasing_rearrangement(const SampledFunction& f);

struct RieszPair {
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;  // 10 h^2
  bool holds() const { return lhs <= rhs + tolerance; }
};

// lhs = ∫∫ f(t) g(t - θ) h(θ) dt dθ by the tensor midpoint rule with g read
// 2T-periodically; rhs is the same with f*, g*, h*.
RieszPair riesz_pair(const SampledFunction& f, const SampledFunction& g, const SampledFunction& h);

}  // namespace iso
