#pragma once

#include <stdexcept>
#include <string>

namespace stylestat {

/// Base class for all library errors. Concrete errors derive from either
/// DataError (bad inputs, malformed files; CLI exit code 2) or
/// NumericalError (numerical contract violations; CLI exit code 3).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual int exit_code() const { return 2; }
};

class DataError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

class NumericalError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

// --- data errors ---

class InvalidDimensionError : public DataError {
 public:
  using DataError::DataError;
};

class InvalidDataError : public DataError {
 public:
  using DataError::DataError;
};

class InsufficientDataError : public DataError {
 public:
  using DataError::DataError;
};

class FormatError : public DataError {
 public:
  using DataError::DataError;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

class SymmetryError : public DataError {
 public:
  using DataError::DataError;
};

class LabelCollisionError : public DataError {
 public:
  using DataError::DataError;
};

class NotFoundError : public DataError {
 public:
  using DataError::DataError;
};

class InvalidInputError : public DataError {
 public:
  using DataError::DataError;
};

class InvalidRegionError : public DataError {
 public:
  using DataError::DataError;
};

// --- numerical errors ---

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotPsdError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateModelError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace stylestat
