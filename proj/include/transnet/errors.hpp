#pragma once

#include <stdexcept>
#include <string>

namespace transnet {

// Invalid user input or configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solver breakdown, non-finite data, failed factorization (CLI exit code 2).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed persisted artifact.
class FormatError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Feature space / problem dimension disagreement.
class DimensionError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace transnet
