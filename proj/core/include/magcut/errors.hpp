#pragma once

#include <stdexcept>
#include <string>

namespace magcut {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input vector/matrix sizes do not match the operation's contract.
struct DimensionError : Error {
  using Error::Error;
};

/// Malformed configuration (bad key, bad value, broken RNG setup).
struct ConfigError : Error {
  using Error::Error;
};

/// File read/write/parse failure.
struct IoError : Error {
  using Error::Error;
};

/// Problem size exceeds a configured dense-storage cap.
struct CapacityError : Error {
  using Error::Error;
};

/// A numerical routine failed (factorization, eigensolver) or produced
/// an unusable result.
struct NumericalError : Error {
  using Error::Error;
};

/// The combined mask energy fell below the full-rank floor.
struct IllConditionedError : NumericalError {
  using NumericalError::NumericalError;
};

/// An iterate collapsed to zero; the iteration cannot continue.
struct DegenerateIterateError : NumericalError {
  using NumericalError::NumericalError;
};

/// Error metric requested against a zero reference signal.
struct UndefinedMetricError : Error {
  using Error::Error;
};

}  // namespace magcut
