#pragma once

#include <stdexcept>
#include <string>

namespace qpigeon {

/// Base class for all qpigeon error conditions.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Post-selection overlap too small for a conditional quantity to be defined.
struct DegeneratePostSelection : Error {
    using Error::Error;
};

/// Gaussian width must be strictly positive.
struct NonpositiveWidth : Error {
    using Error::Error;
};

/// Interaction strength x = a/sigma must be nonnegative.
struct NegativeStrength : Error {
    using Error::Error;
};

/// Monte Carlo sample count below the supported floor.
struct InsufficientSamples : Error {
    using Error::Error;
};

/// Quadrature order outside the supported per-axis range.
struct OrderOutOfRange : Error {
    using Error::Error;
};

/// Sweep grid specification is not a valid inclusive range.
struct InvalidRange : Error {
    using Error::Error;
};

/// Output file could not be created or written.
struct IoError : Error {
    using Error::Error;
};

} // namespace qpigeon
