#pragma once

#include <stdexcept>
#include <string>

namespace cracklelab {

/// A formula or input left its mathematical domain (log of a non-positive
/// argument, invalid profile parameters, out-of-range index, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed a hard resource cap (grid size, simplex count).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration or file input.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cracklelab
