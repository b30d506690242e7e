#pragma once

#include <stdexcept>
#include <string>

namespace edgeflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the supported domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical procedure failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (spectrum files, configs).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Input parsed fine but violates a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A least-squares fit had too few points or a degenerate design.
class FitError : public Error {
 public:
  using Error::Error;
};

/// A metric (or metric perturbation) became degenerate.
class StateError : public Error {
 public:
  using Error::Error;
};

/// Singular matrices and related linear-algebra failures.
class LinearAlgebraError : public Error {
 public:
  using Error::Error;
};

/// The time discretisation cannot support the requested convolution.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// A supplied kernel basis is unusable (rank deficient Gram matrix).
class BasisError : public Error {
 public:
  using Error::Error;
};

}  // namespace edgeflow
