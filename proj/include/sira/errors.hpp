#pragma once

#include <stdexcept>
#include <string>

namespace sira {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A SparseSpec that violates its invariants (duplicate bins, K >= N, ...).
class InvalidSpec : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Input outside the mathematical domain of a primitive (log of x <= 0, NaN).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Fixed-point value does not fit its register width.
class RangeError : public Error {
 public:
  using Error::Error;
};

class LinearAlgebraError : public Error {
 public:
  using Error::Error;
};

class EmptySupportError : public LinearAlgebraError {
 public:
  using LinearAlgebraError::LinearAlgebraError;
};

class UnderdeterminedError : public LinearAlgebraError {
 public:
  using LinearAlgebraError::LinearAlgebraError;
};

class SingularSystemError : public LinearAlgebraError {
 public:
  using LinearAlgebraError::LinearAlgebraError;
};

}  // namespace sira
