#pragma once

#include <stdexcept>
#include <string>

namespace ibaudit {

// Bad input, bad config, broken invariants in user-supplied data.
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric or internal failure (non-finite loss, dimension bugs, I/O).
// The CLI maps this to exit code 2.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ibaudit
