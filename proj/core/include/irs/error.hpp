#pragma once

#include <stdexcept>
#include <string>

namespace irs {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration (bad hyperparameters, grid, CLI config).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data problems: dimension mismatches, unreadable files, missing columns.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A linear system or factorization could not be solved.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace irs
