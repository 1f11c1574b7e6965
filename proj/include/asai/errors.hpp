#pragma once

#include <stdexcept>
#include <string>

namespace asai {

// Retained digits ran out (e.g. inverting a tracked zero).
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands live over different prime contexts.
struct ContextMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

// Malformed input data or violated preconditions.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The c-removal factor of a component has a non-unit constant term.
struct MeromorphicComponent : std::runtime_error {
  int delta;
  MeromorphicComponent(int d, const std::string& msg) : std::runtime_error(msg), delta(d) {}
};

}  // namespace asai
