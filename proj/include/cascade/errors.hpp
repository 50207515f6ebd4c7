#pragma once

#include <stdexcept>

namespace cascade {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numeric argument lies outside its admissible range.
struct OutOfRangeError : Error {
  using Error::Error;
};

/// An operation was applied outside the domain it is defined on
/// (e.g. a non-canonical quality pair passed to an analytic formula).
struct DomainViolationError : Error {
  using Error::Error;
};

/// step() was called on a walk that has already been absorbed.
struct SteppedAfterCascadeError : Error {
  using Error::Error;
};

/// The requested series tolerance needs more terms than the hard cap.
struct ToleranceUnreachableError : Error {
  using Error::Error;
};

/// A supplied fraction does not match the cascade constant of the inputs.
struct ConstantMismatchError : Error {
  using Error::Error;
};

/// No rational approximation of the cascade constant was found.
struct NoRationalApproximationError : Error {
  using Error::Error;
};

/// Root finding cannot reach the target below the open upper bound.
struct NoSolutionError : Error {
  using Error::Error;
};

/// A budget strategy was requested outside its regime.
struct RegimeViolationError : Error {
  using Error::Error;
};

/// The equalize strategy is infeasible for the given problem.
struct InfeasibleEqualizeError : Error {
  using Error::Error;
};

/// A simulated path failed to absorb within the step cap.
struct StepCapExceededError : Error {
  using Error::Error;
};

}  // namespace cascade
