#pragma once

#include <string>
#include <vector>

namespace focpc {

// One property check at a fixed grid/seed. `measured` vs `bound` semantics
// depend on the check (residual to stay below, ratio to stay above); `pass`
// is authoritative.
struct PropertyResult {
  std::string family;
  std::string name;
  double measured;
  double bound;
  bool pass;
};

// Runs the property suite at fixed grids and seeds. `only` restricts to one
// family (empty runs all); unknown family names are rejected. Families:
// ml, composition, ibp, gronwall, meanvalue, taylor, linearity, convergence.
std::vector<PropertyResult> run_validation(const std::string& only = "");

}  // namespace focpc
