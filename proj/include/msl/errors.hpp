#pragma once

#include <stdexcept>
#include <string>

namespace msl {

// Rejected input: bad files, malformed specs, violated preconditions.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A structural invariant the library itself guarantees failed to hold.
// Seeing one of these means a bug (e.g. a boundary map whose square is
// nonzero), never a problem with user input.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace msl
