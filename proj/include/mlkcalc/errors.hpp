#pragma once

#include <stdexcept>
#include <string>

namespace mlk {

// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (t < base, non-positive grid, ...).
struct DomainError : Error {
    using Error::Error;
};

// Gamma evaluated at a non-positive integer.
struct PoleError : DomainError {
    using DomainError::DomainError;
};

// Result exceeds double range (gamma beyond ~171.62, ...).
struct OverflowError : Error {
    using Error::Error;
};

// Series hit its term cap before meeting the truncation tolerance.
struct NoConvergence : Error {
    using Error::Error;
};

// |1-k| below threshold in a linear ODE family that divides by (1-k).
struct DegenerateK : Error {
    using Error::Error;
};

// Automatic quadratic-branch selection is inconsistent across Talbot nodes.
struct BranchAmbiguity : Error {
    using Error::Error;
};

// Quadratic discriminant vanishes on the inversion contour.
struct DiscriminantZero : Error {
    using Error::Error;
};

// Talbot node terms grow instead of decaying; contour unsuitable.
struct OscillationError : Error {
    using Error::Error;
};

// -P/Q < 0: no real equilibrium coefficient a0.
struct ComplexRoot : DomainError {
    using DomainError::DomainError;
};

// Recursion denominator 2*Q*a0 - B(alpha)/(1-alpha) vanishes.
struct DenominatorZero : DomainError {
    using DomainError::DomainError;
};

} // namespace mlk
