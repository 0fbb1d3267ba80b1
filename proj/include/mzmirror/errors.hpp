#pragma once

#include <stdexcept>
#include <string>

namespace mzmirror {

/// Base of every physics/numerics error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a documented invariant (normalization, r^2 + t^2 = 1, ...).
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// The momentum grid cannot hold the state's significant density.
class GridCoverageError : public Error {
 public:
  using Error::Error;
};

class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// Post-selection onto a channel with (numerically) zero overlap: a forbidden outcome.
class ZeroOverlapError : public Error {
 public:
  using Error::Error;
};

class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

}  // namespace mzmirror
