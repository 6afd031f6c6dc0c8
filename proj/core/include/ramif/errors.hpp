#pragma once

#include <stdexcept>
#include <string>

namespace ramif {

// Malformed user input: bad JSON, schema violation, unsupported parameters.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A result would need series coefficients outside the tracked window, or the
// exact pole part could no longer be guaranteed.
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical precondition does not hold (non-unit inversion, membership
// prerequisite, non-additive fiber element, ...).
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Broken internal invariant; indicates a bug, not bad input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace ramif
