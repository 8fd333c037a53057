#pragma once

#include <stdexcept>
#include <string>

namespace garchlim {

// Raised when a configuration file or CLI configuration is malformed.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when adaptive quadrature cannot reach the requested tolerance.
// Carries the best estimate achieved so callers can still inspect it.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& msg, double achieved_value, double achieved_error)
      : std::runtime_error(msg), value(achieved_value), error(achieved_error) {}
  double value;
  double error;
};

// Raised when a volatility chain degenerates to zero (h0 + beta = 0), which
// makes the innovation map non-invertible.
class SingularModelError : public std::runtime_error {
 public:
  explicit SingularModelError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an output file cannot be created or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by the rank-sum test when the pooled sample is entirely tied.
// Convention for callers that want a value anyway: W = 0, p = 1.
class DegenerateSampleError : public std::runtime_error {
 public:
  explicit DegenerateSampleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace garchlim
