#pragma once

#include <stdexcept>
#include <string>

namespace qgibbs {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A support/region is not contained where it must be.
struct ContainmentError : Error {
  using Error::Error;
};

/// Region geometry is unusable (collar does not fit, malformed box, ...).
struct GeometryError : Error {
  using Error::Error;
};

/// Dimension cap or memory budget exceeded.
struct ResourceError : Error {
  using Error::Error;
};

/// Input outside the mathematical domain of an operation
/// (log of a singular operator, rank-deficient state, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Invariant-violating values or malformed configuration.
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace qgibbs
