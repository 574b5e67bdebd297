#pragma once

#include <stdexcept>
#include <string>

namespace qfid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument shape or range (dimension mismatch, rank out of range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A matrix failed a state invariant (PSD, unit trace, unitary, ...).
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Matrix or file content that cannot be parsed into a valid object.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a positive definite input got a singular one.
class SingularInput : public Error {
 public:
  SingularInput(const std::string& what, double min_eigenvalue)
      : Error(what + " (min eigenvalue " + std::to_string(min_eigenvalue) + ")"),
        min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// An iterative method hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Argument outside the domain of a real function (e.g. arctanh).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfid
