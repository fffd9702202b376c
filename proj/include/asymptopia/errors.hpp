#pragma once

#include <stdexcept>
#include <string>

namespace asymptopia {

// Invalid parameters or configuration (CLI exit code 2).
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation called with incompatible arguments, e.g. vectors on different grids.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mathematically undefined request, e.g. the norm of a charged vector.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace asymptopia
