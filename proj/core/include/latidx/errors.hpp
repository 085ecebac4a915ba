#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace latidx {

// Root of every error raised by the library. Callers that only care about
// "the input was rejected" can catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch: non-square where a square matrix is required, ragged rows,
// vectors of the wrong length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A matrix or parameter set that does not define a valid lattice.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotWellRounded : public ValidationError {
 public:
  NotWellRounded() : ValidationError("minimal vectors do not span") {}
};

class NotABasis : public ValidationError {
 public:
  NotABasis() : ValidationError("not a basis: the chosen vectors are linearly dependent") {}
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

// Malformed text input, with a 1-based source position.
class ParseError : public ValidationError {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what)
      : ValidationError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                        ": " + what),
        source_(std::move(source)),
        line_(line),
        column_(column) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace latidx
