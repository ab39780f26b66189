#ifndef HADKERNEL_ERRORS_HPP
#define HADKERNEL_ERRORS_HPP

#include <stdexcept>

namespace hadkernel {

// Mismatched or out-of-range dimensions and other typed-value preconditions.
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A resource guard tripped (enumeration budget, memory limit). Raised before
// the large allocation or loop starts, never mid-run.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A claimed certificate failed its exact re-check (e.g. an invalid witness).
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hadkernel

#endif  // HADKERNEL_ERRORS_HPP
