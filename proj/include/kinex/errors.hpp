#pragma once

#include <stdexcept>
#include <string>

namespace kinex {

// Argument outside the mathematical domain of an operation (negative wealth,
// lambda >= 1, non-unit direction, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid run setup: too few agents, malformed config key, bad output path.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sample set carries no spread to fit (all values equal, the lambda -> 1 limit).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kinex
