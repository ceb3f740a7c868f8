#pragma once

#include <stdexcept>
#include <string>

namespace subw {

// Raised when a caller violates an operation's preconditions (bad parameters,
// malformed input files, degenerate weight vectors, ...). The CLI maps this to
// exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a numeric routine cannot deliver its postcondition (bracket not
// found, MGF blow-up inside a bracket, eigensolver non-convergence, ...). The
// CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subw
