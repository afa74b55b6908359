#pragma once

#include <stdexcept>
#include <string>

namespace qmatch {

// Raised when an enumeration would exceed its configured guard.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised on malformed input files or values (CLI exit code 2).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a decomposition hypothesis does not hold for the given point.
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qmatch
