#pragma once

#include <stdexcept>
#include <string>

namespace thetarank {

// Size or search budget exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Floating-point routine failed to converge.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed text input.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace thetarank
