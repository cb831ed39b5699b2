#pragma once

#include <stdexcept>
#include <string>

namespace liegrade {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown Dynkin label or rank out of range.
class InvalidLabel : public Error {
 public:
  using Error::Error;
};

/// The label names a case the classification excludes (types A, C, G2).
class ExcludedCase : public Error {
 public:
  using Error::Error;
};

/// ad(h) is not diagonalizable over Q with integer eigenvalues.
class InvalidGradingElement : public Error {
 public:
  using Error::Error;
};

/// Requested prolongation depth exceeds the configured safety bound.
class ProlongationBoundExceeded : public Error {
 public:
  using Error::Error;
};

/// A modulus divides a denominator, or two primes disagree; callers retry with a new prime.
class PrimeCollision : public Error {
 public:
  using Error::Error;
};

/// A postcondition that cannot fail on valid input was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace liegrade
