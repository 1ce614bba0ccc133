#pragma once

#include <stdexcept>
#include <string>

namespace slzeros {

/// Input outside the mathematical domain of an operation (non-positive weight,
/// point outside [0, 2pi], NaN in a derivative, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical machinery failed (integrator step underflow, bracket failure).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A checked invariant did not hold.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Bad user configuration (unknown key, unknown preset, malformed value).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace slzeros
