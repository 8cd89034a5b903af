#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph text. Carries a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Structurally invalid graph data handed to Graph::build.
class GraphError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (unknown vertex, a set that is
/// not hereditary, S not contained in B_H, mismatched graphs, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed algebra expression. `position` is a 0-based byte offset.
class ExpressionError : public Error {
 public:
  ExpressionError(std::size_t position, const std::string& what);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A result failed one of its certified structural properties.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace lpa
