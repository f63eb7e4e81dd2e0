#pragma once

// Downhill simplex minimizer for small fixed dimension.

#include <Eigen/Dense>

#include <algorithm>
#include <array>

namespace iso {

template <int N>
struct NelderMeadResult {
  Eigen::Matrix<double, N, 1> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Stops when every vertex lies within `xtol` of the best one (max norm) or
// after `max_iter` iterations. Standard coefficients 1, 2, 1/2, 1/2.
template <int N, class F>
NelderMeadResult<N> nelder_mead(F&& f, const Eigen::Matrix<double, N, 1>& x0, double step,
                                double xtol, int max_iter = 5000) {
  using Vec = Eigen::Matrix<double, N, 1>;
  std::array<Vec, N + 1> simplex;
  std::array<double, N + 1> fv;
  simplex[0] = x0;
  for (int i = 0; i < N; ++i) {
    simplex[i + 1] = x0;
    simplex[i + 1][i] += step;
  }
  for (int i = 0; i <= N; ++i) fv[i] = f(simplex[i]);

  NelderMeadResult<N> out;
  int it = 0;
  for (; it < max_iter; ++it) {
    std::array<int, N + 1> order;
    for (int i = 0; i <= N; ++i) order[i] = i;
    // Ties keep the earlier vertex first, then the lexicographically smaller point.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (fv[a] != fv[b]) return fv[a] < fv[b];
      return std::lexicographical_compare(simplex[a].data(), simplex[a].data() + N,
                                          simplex[b].data(), simplex[b].data() + N);
    });
    std::array<Vec, N + 1> s2;
    std::array<double, N + 1> f2;
    for (int i = 0; i <= N; ++i) {
      s2[i] = simplex[order[i]];
      f2[i] = fv[order[i]];
    }
    simplex = s2;
    fv = f2;

    double spread = 0.0;
    for (int i = 1; i <= N; ++i) {
      spread = std::max(spread, (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
    }
    if (spread < xtol) {
      out.converged = true;
      break;
    }

    Vec centroid = Vec::Zero();
    for (int i = 0; i < N; ++i) centroid += simplex[i];
    centroid /= N;
    const Vec xr = centroid + (centroid - simplex[N]);
    const double fr = f(xr);
    if (fr < fv[0]) {
      const Vec xe = centroid + 2.0 * (centroid - simplex[N]);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[N] = xe;
        fv[N] = fe;
      } else {
        simplex[N] = xr;
        fv[N] = fr;
      }
      continue;
    }
    if (fr < fv[N - 1]) {
      simplex[N] = xr;
      fv[N] = fr;
      continue;
    }
    const bool outside = fr < fv[N];
    const Vec xc = outside ? Vec(centroid + 0.5 * (xr - centroid))
                           : Vec(centroid + 0.5 * (simplex[N] - centroid));
    const double fc = f(xc);
    if (fc < (outside ? fr : fv[N])) {
      simplex[N] = xc;
      fv[N] = fc;
      continue;
    }
    for (int i = 1; i <= N; ++i) {
      simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
      fv[i] = f(simplex[i]);
    }
  }
  int best = 0;
  for (int i = 1; i <= N; ++i) {
    if (fv[i] < fv[best]) best = i;
  }
  out.x = simplex[best];
  out.value = fv[best];
  out.iterations = it;
  return out;
}

}  // namespace iso
