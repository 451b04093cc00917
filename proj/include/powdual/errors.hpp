#pragma once

#include <stdexcept>
#include <string>

namespace powdual {

/// Base class for all numerical-library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// Evaluation requested at (or too close to) a pole.
struct PoleError : Error {
    using Error::Error;
};

/// System's primary exponent does not match the transformation it was paired with.
struct ExponentMismatch : Error {
    using Error::Error;
};

/// Result exceeds the representable range; a log-scaled companion is usually available.
struct OverflowError : Error {
    using Error::Error;
};

/// An iterative scheme (series, quadrature, extrapolation) failed to meet its tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Two-point arguments supplied in the wrong order (outer must exceed inner).
struct OrderingError : Error {
    using Error::Error;
};

/// Root bracketing failed: no sign change of the matching function in the window.
struct NoBracketError : Error {
    using Error::Error;
};

}  // namespace powdual
