#pragma once

#include <stdexcept>
#include <string>

namespace rht {

// Base class for all engine errors. Expected negative outcomes (a differential
// failing d^2=0, a non-TNCZ extension, ...) are reported through verdict types,
// not exceptions; exceptions mean the caller violated a contract or a certified
// hypothesis failed mid-algorithm.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands built over different free graded-commutative algebras.
class DomainMismatchError : public Error {
 public:
  using Error::Error;
};

// Degree, parity, or second-grading violation in a type invariant.
class GradingError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A hypothesis that was certified before an algorithm started failed during
// the run. This is a bug trap: either the certificate check or the algorithm
// is wrong, and the error must never be swallowed.
class TheoryViolationError : public Error {
 public:
  using Error::Error;
};

// Document parsing / validation failure. `where` is a JSON path for semantic
// errors or "line L, column C" for syntax errors.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace rht
