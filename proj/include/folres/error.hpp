#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace folres {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class UnmappedVariable : public Error {
 public:
  using Error::Error;
};

/// Raised by exact division when some term is not divisible.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// A blowup whose center is not contained in V(I); controlled transform undefined.
class OrderOneViolation : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure (a mathematical expectation did not hold).
class ConsistencyFailure : public Error {
 public:
  using Error::Error;
};

/// A tangency chain did not stabilize within its step budget.
class NotStabilized : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace folres
