#pragma once

#include <stdexcept>
#include <string>

namespace cvnl {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// (a1, a2, a3) outside the pure-state feasibility region.
class TriangleViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

// A radicand or similar intermediate went negative beyond tolerance.
class NumericalDomain : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Matrix fails symmetry, positivity or the uncertainty relation.
class InvalidCovariance : public Error {
 public:
  using Error::Error;
};

// Internally inconsistent data, e.g. a correlator table implying negative
// probabilities.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace cvnl
