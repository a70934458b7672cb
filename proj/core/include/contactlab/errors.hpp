#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace contactlab {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension/order mismatch between operands, or an index out of range.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A function was evaluated outside its domain (ln of a non-positive value,
// division by a jet whose constant term is zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A derivative was requested beyond the truncation order of a jet.
class OrderError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Expression evaluation failed at a specific chart point.
class EvalError : public Error {
 public:
  using Error::Error;
};

// Singular metric, degenerate plane, missing structure, or an operation
// whose geometric precondition does not hold.
class GeometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace contactlab
