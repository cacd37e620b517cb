#pragma once

#include <stdexcept>

namespace focpc {

// Thrown when a time-stepping solver leaves its trust region: some state
// component exceeds 1e12 in magnitude or stops being finite.
struct divergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a truncated series fails to reach its tolerance within the
// allotted number of terms.
struct non_convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace focpc
