#pragma once

#include <stdexcept>
#include <string>

namespace mgk {

// Malformed input: bad config, bad root datum, unsupported preset, group cap.
// The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of an operation was violated by the caller.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A computation could not be completed (budget, singular reduction step).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mgk
