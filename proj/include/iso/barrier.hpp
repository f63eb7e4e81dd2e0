#pragma once

// Piecewise barrier M >= H on [0, π], its decreasing rearrangement M*, and
// the resulting lower bound on m.

#include <string>

namespace iso {

struct BarrierNodes {
  double x1 = 0.355;
  double x2 = 0.59;
  double x3 = 1.3;
  double x4 = 1.9;
  double x5 = 2.25;
};

// M(x) for x in [0, π]: H on [0, x1], then r1 .. r5. The last parabola is
// normalized so that r5(π) = H(x1), which makes M continuous at x1.
double barrier_M(double x);

// |{x in [0, π] : M(x) > t}| from the branch inverses of the pieces.
double barrier_level_measure(double t);

// Decreasing rearrangement of M on [0, π] (inverse of the level measure).
double barrier_M_star(double x);

// Decreasing rearrangement of H on [0, π].
double kernel_H_star(double x);

// ∫_0^π (π - x) M*(x) dx, piecewise Gauss-Kronrod.
double barrier_integral();

// 1 / (8 ∫_0^π (π - x) M*(x) dx).
double m_lower_bound();

struct BarrierCheck {
  double min_gap = 0.0;       // min over the grid of M - H
  double min_star_gap = 0.0;  // min over the grid of M* - H*
  int grid = 0;
};

// Pointwise comparisons on `grid` equispaced points of [0, π].
BarrierCheck barrier_check(int grid = 10000);

// CSV table x,H,M,H_star,M_star on `rows` points.
std::string kernel_table_csv(int rows = 401);

}  // namespace iso
