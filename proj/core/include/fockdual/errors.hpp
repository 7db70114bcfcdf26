#pragma once

#include <stdexcept>
#include <string>

namespace fockdual {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input outside the domain of an operation (cone origin, branch locus, p = inf, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An integrand produced NaN or an infinity.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// A series or iteration failed to converge within its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace fockdual
