#pragma once

#include <stdexcept>
#include <string>

namespace ipl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where a map is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An integration interval is empty or reversed.
class InvalidDomain : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An integrand returned NaN or infinity.
class NonFiniteIntegrand : public Error {
 public:
  using Error::Error;
};

/// The requested target is not enclosed by the values at the bracket ends.
class BracketInvalid : public Error {
 public:
  using Error::Error;
};

/// The simulator was asked to run with a velocity exponent it does not support.
class InvalidExponent : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A collision acceptance probability exceeded one; the speed majorant is stale.
class RateOverflow : public Error {
 public:
  using Error::Error;
};

/// An iterative method ran out of budget before meeting its tolerance.
/// Carries the best estimate reached so far.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double partial_value, double partial_error)
      : Error(what), partial_value_(partial_value), partial_error_(partial_error) {}

  double partial_value() const noexcept { return partial_value_; }
  double partial_error() const noexcept { return partial_error_; }

 private:
  double partial_value_;
  double partial_error_;
};

}  // namespace ipl
