#pragma once

#include <stdexcept>
#include <string>

namespace sqwell {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A physical parameter triple is inconsistent with integer well strength.
class RoundingError : public Error {
 public:
  using Error::Error;
};

/// A root finder could not meet the requested tolerance.
class ToleranceNotReached : public Error {
 public:
  using Error::Error;
};

/// The requested transition violates the positivity condition.
class NotAllowedError : public Error {
 public:
  using Error::Error;
};

/// A target value lies outside the invertible range.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// A sampled monotonicity check failed.
class NonMonotoneError : public Error {
 public:
  using Error::Error;
};

}  // namespace sqwell
