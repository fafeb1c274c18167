#pragma once

#include <stdexcept>
#include <string>

namespace gapfield {

// Invalid input to a numerical routine (pole, out-of-range argument, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Problem is outside the contrast regime a formula assumes.
struct RegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent experiment description.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gapfield
