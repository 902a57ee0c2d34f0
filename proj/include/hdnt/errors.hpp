#ifndef HDNT_ERRORS_HPP
#define HDNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hdnt {

/// Base class of all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration (flags, parameters out of range). CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Bad or degenerate input data. CLI exit code 3.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown inside a computation. CLI exit code 4.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

/// Non-numeric or non-finite cell in an input file. Coordinates are
/// 1-based positions in the file (header line included).
class ParseError : public DataError {
 public:
  ParseError(std::size_t row, std::size_t col, const std::string& what)
      : DataError(what), row_(row), col_(col) {}
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class ShapeError : public DataError {
 public:
  using DataError::DataError;
};

class EmptySample : public DataError {
 public:
  using DataError::DataError;
};

class InsufficientSample : public DataError {
 public:
  using DataError::DataError;
};

class InsufficientPoints : public DataError {
 public:
  using DataError::DataError;
};

class EmptyNull : public DataError {
 public:
  using DataError::DataError;
};

class DimensionMismatch : public DataError {
 public:
  using DataError::DataError;
};

class InvalidMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NumericalFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotPositiveSemidefinite : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularCovariance : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace hdnt

#endif  // HDNT_ERRORS_HPP
