#pragma once

#include <stdexcept>
#include <string>

namespace sp2 {

/// Base class for every precondition failure raised by the library.
class GeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A Lie algebra element whose diagonal blocks carry a real part above tolerance.
class InvalidElement : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// The two vectors do not span a 2-plane (Gram determinant too small).
class DegeneratePlane : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NotUnit : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Requested construction only exists for a different parameter regime.
class NotApplicable : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class DiscriminantNegative : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// theta outside the open chart interval (0, pi).
class OutOfChart : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NotTangent : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class DegenerateFrame : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

}  // namespace sp2
