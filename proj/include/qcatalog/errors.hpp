#pragma once

#include <stdexcept>
#include <string>

namespace qcat {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in spaces of different dimension, or a declared
// factorization does not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An argument violates the documented precondition of an operation
// (non-self-adjoint observable, non-projector, out-of-range angle...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Conditioning on an outcome that has probability zero.
class ImpossibleOutcome : public Error {
 public:
  using Error::Error;
};

// A numerical self-check failed after a computation.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace qcat
