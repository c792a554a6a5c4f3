#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rfnn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent arguments: non-finite entries, dimension
/// mismatches, empty inputs.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// A configuration that violates its own invariants (bad interval bounds,
/// empty grids, too few points for the requested clustering).
class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

/// Dense solver failed to converge.
class NumericFailureError : public Error {
 public:
  NumericFailureError(const std::string& what, std::size_t iterations)
      : Error(what), iterations_(iterations) {}

  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

/// A hidden node whose weight vector is zero has no inflection hyperplane.
class DegenerateNodeError : public Error {
 public:
  using Error::Error;
};

/// Unparseable cell in a tabular file. Row and column are 1-based and refer
/// to the physical line and field in the file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : Error(what + " (line " + std::to_string(row) + ", column " +
              std::to_string(column) + ")"),
        row_(row),
        column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// Structural problem with a tabular file, e.g. ragged rows.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace rfnn
