#pragma once

#include <stdexcept>
#include <string>

namespace bhw {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two states defined on incompatible grids were combined.
struct GridMismatchError : Error {
  using Error::Error;
};

/// A control value or parameter violates its declared bounds.
struct BoundsError : Error {
  using Error::Error;
};

/// A state degenerated (zero norm, empty control sequence, ...).
struct DegenerateError : Error {
  using Error::Error;
};

/// An iterative solver did not reach its tolerance within budget.
struct ConvergenceError : Error {
  using Error::Error;
};

/// Non-finite values appeared during propagation or optimization.
struct NumericalError : Error {
  using Error::Error;
};

/// A config or solution file could not be parsed; message carries
/// the offending file, line and key.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace bhw
