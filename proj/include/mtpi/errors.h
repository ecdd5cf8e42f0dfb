#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtpi {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed formula text or knowledge-base file. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A formula does not have the shape an operation requires (not a clause,
// not propositional, ...).
class ShapeError : public Error {
 public:
  using Error::Error;
};

// An operation's precondition does not hold, e.g. X does not entail Y.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The tableau node budget or the enumeration budget ran out. This is a third
// outcome next to sat/unsat and must never be read as either.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// A CNF/DNF or candidate set grew beyond its configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// File could not be read/written or has the wrong schema.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mtpi
