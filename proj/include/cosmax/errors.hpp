#pragma once

#include <stdexcept>
#include <string>

namespace cosmax {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An eigenvalue at or below the configured floor: the matrix is numerically
// singular and the requested inverse (or inverse square root) is undefined.
class ExactCollinearityError : public Error {
 public:
  using Error::Error;
};

// The Jacobi sweep limit was exhausted before the off-diagonal mass vanished.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A data column with (numerically) zero variance cannot be standardized.
class ConstantColumnError : public Error {
 public:
  ConstantColumnError(const std::string& column, const std::string& what)
      : Error(what), column_(column) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

// Malformed input text; carries a 1-based row/column location when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t row = 0,
                      std::size_t column = 0)
      : Error(what), row_(row), column_(column) {}
  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_ = 0;
  std::size_t column_ = 0;
};

class AsymmetryError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public Error {
 public:
  using Error::Error;
};

class NotOrthonormalError : public Error {
 public:
  using Error::Error;
};

class SingularPredictorsError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cosmax
