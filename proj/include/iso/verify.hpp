#pragma once

// Seeded invariant suites shared by `iso verify all` and the acceptance run.

#include <cstdint>
#include <string>
#include <vector>

namespace iso {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int violations = 0;
  std::string detail;  // first violation, or a summary figure
  double seconds = 0.0;
  bool passed() const { return violations == 0; }
};

// λ ≤ λ0 ≤ 2, δ ≥ 0, δ/λ² ≥ 0.02 when λ > 1e-3, diameter ≤ P/2, and
// δ ≥ λ0²/16 on convex radial shapes with ‖u‖∞ ≤ 0.1. Shapes cycle through
// convex polygons, projected radial profiles and disk-segment composites.
SuiteResult inequality_chain_suite(std::uint64_t seed, int shapes);

// Riesz inequality on random nonnegative step-function triples, plus exact
// equimeasurability, monotonicity and shift invariance of the rearrangement.
SuiteResult riesz_suite(std::uint64_t seed, int triples);

// Save/load through JSON preserves δ, λ0 and the area to 1e-12.
SuiteResult round_trip_suite(std::uint64_t seed, int shapes);

// Every check used by `iso verify all`, in a fixed order.
std::vector<SuiteResult> verify_all(std::uint64_t seed);

std::string verify_table(const std::vector<SuiteResult>& rows);

}  // namespace iso
