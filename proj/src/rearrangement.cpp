#include "iso/rearrangement.hpp"

#include "iso/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace iso {

SampledFunction::SampledFunction(double half_width, Eigen::VectorXd values)
    : half_width_(half_width), values_(std::move(values)) {
  if (!(half_width_ > 0.0) || !std::isfinite(half_width_)) {
    throw ValidationError("half width must be positive");
  }
  if (values_.size() < 8) throw ValidationError("sampled function needs at least 8 nodes");
  if (!values_.allFinite()) throw ValidationError("sampled function has non-finite values");
}

double SampledFunction::periodic_at(double x) const {
  const int n = size();
  const double h = step();
  const double pos = (x + half_width_) / h - 0.5;
  const double fl = std::floor(pos);
  const double w = pos - fl;
  int i0 = static_cast<int>(std::fmod(fl, static_cast<double>(n)));
  if (i0 < 0) i0 += n;
  const int i1 = (i0 + 1) % n;
  return (1.0 - w) * values_[i0] + w * values_[i1];
}

SampledFunction decreasing_rearrangement(const SampledFunction& f) {
  const int n = f.size();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const Eigen::VectorXd& v = f.values();
  std::stable_sort(order.begin(), order.end(), [&v](int a, int b) { return v[a] > v[b]; });

  Eigen::VectorXd out(n);
  // Slots from the center outward: right of center first.
  int right = n / 2;
  int left = n / 2 - 1;
  std::size_t next = 0;
  if (n % 2 == 1) {
    out[n / 2] = v[order[next++]];
    right = n / 2 + 1;
    left = n / 2 - 1;
  }
  while (next < order.size()) {
    if (right < n) out[right++] = v[order[next++]];
    if (next < order.size() && left >= 0) out[left--] = v[order[next++]];
  }
  return SampledFunction(f.half_width(), std::move(out));
}

namespace {

double triple_integral(const SampledFunction& f, const SampledFunction& g,
                       const SampledFunction& h) {
  const int n = f.size();
  const double step = f.step();
  // g(t - θ) depends only on the index offset i - j.
  Eigen::VectorXd gdiff(2 * n - 1);
  for (int d = -(n - 1); d <= n - 1; ++d) gdiff[d + n - 1] = g.periodic_at(d * step);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double inner = 0.0;
    for (int j = 0; j < n; ++j) inner += gdiff[i - j + n - 1] * h.values()[j];
    sum += f.values()[i] * inner;
  }
  return sum * step * step;
}

}  // namespace

RieszPair riesz_pair(const SampledFunction& f, const SampledFunction& g, const SampledFunction& h) {
  if (f.size() != g.size() || f.size() != h.size() || f.half_width() != g.half_width() ||
      f.half_width() != h.half_width()) {
    throw ValidationError("riesz_pair needs three functions on the same grid");
  }
  RieszPair out;
  out.lhs = triple_integral(f, g, h);
  out.rhs = triple_integral(decreasing_rearrangement(f), decreasing_rearrangement(g),
                            decreasing_rearrangement(h));
  out.tolerance = 10.0 * f.step() * f.step();
  return out;
}

}  // namespace iso
