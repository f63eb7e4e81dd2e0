#pragma once

#include <stdexcept>
#include <string>

namespace iso {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented invariant (bad vertices, out-of-range parameter, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Zero area or otherwise unusable geometry.
class DegenerateShapeError : public Error {
 public:
  using Error::Error;
};

// Raster estimator would need more cells than allowed.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Newton projection onto the area/barycenter constraints did not converge.
class ProjectionError : public Error {
 public:
  using Error::Error;
};

// A constraint residual or compatibility condition is too large.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

// Root bracket without a sign change.
class RootBracketError : public Error {
 public:
  using Error::Error;
};

}  // namespace iso
