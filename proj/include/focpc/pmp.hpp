#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "focpc/grid.hpp"

namespace focpc {

// Admissible control region, constant in time. Either a componentwise box or
// an explicit finite list of admissible values. Time-varying and general
// set-valued regions are out of scope.
class ControlSet {
 public:
  static ControlSet box(std::vector<double> lo, std::vector<double> hi);
  static ControlSet candidates(std::vector<std::vector<double>> values);

  std::size_t dim() const { return dim_; }

  // Values scanned by the Hamiltonian maximizer, ascending lexicographically:
  // the corner set for a box (control-affine Hamiltonians attain their
  // maximum there), the full list for candidates.
  const std::vector<std::vector<double>>& scan_values() const { return scan_; }

  // Nearest admissible value: componentwise clamp for a box, Euclidean
  // nearest for candidates with ties to the lexicographically smallest.
  std::vector<double> project(const std::vector<double>& u) const;

  // Deterministic sweep start: box midpoint, or the smallest candidate.
  std::vector<double> initial_value() const;

  bool contains(const std::vector<double>& u, double tol = 0.0) const;

 private:
  ControlSet() = default;

  bool is_box_ = false;
  std::size_t dim_ = 0;
  std::vector<double> lo_, hi_;
  std::vector<std::vector<double>> scan_;
};

using DynamicsFn = std::function<std::vector<double>(
    double, const std::vector<double>&, const std::vector<double>&)>;
using ScalarFieldFn = std::function<double(
    double, const std::vector<double>&, const std::vector<double>&)>;

// Optimal control problem on [t0, tf] with Caputo dynamics of order alpha.
// Running-cost form carries a lagrangian (with its state gradient, needed to
// assemble the augmented Jacobian); Mayer form leaves both empty and carries
// the terminal cost. After reduce_to_mayer exactly the terminal route is
// active.
struct ProblemSpec {
  DynamicsFn dynamics;
  // Row-major state Jacobian of the dynamics: entry (i, j) = df_i / dx_j.
  DynamicsFn dynamics_jacobian_x;

  ScalarFieldFn lagrangian;        // empty in Mayer form
  DynamicsFn lagrangian_gradient_x;  // d/dx of the lagrangian, same emptiness

  std::function<double(const std::vector<double>&)> terminal_cost;
  std::function<std::vector<double>(const std::vector<double>&)>
      terminal_gradient;

  ControlSet control_set;
  std::vector<double> x0;
  double t0;
  double tf;
  FractionalOrder alpha;

  std::size_t state_dim() const { return x0.size(); }
  bool is_mayer() const { return !lagrangian; }
};

struct SweepOptions {
  std::size_t max_iters = 500;
  double tol = 1e-6;        // sup-norm control change stopping threshold
  double relaxation = 0.5;  // theta in [0, 1); next u = theta*old + (1-theta)*new
};

struct SweepResult {
  GridFunction control;
  GridFunction state;
  GridFunction adjoint;
  double cost;  // terminal cost of the final state
  std::size_t iterations;
  bool converged;
  double control_change_norm;
  std::vector<double> change_history;  // control change per iteration
};

// Running-cost-to-Mayer reduction: prepends an accumulator state y with
// Caputo derivative L and y(t0) = 0, giving dynamics col(L, f) and terminal
// cost y(tf) plus any original terminal cost. The input problem is left
// unchanged.
ProblemSpec reduce_to_mayer(const ProblemSpec& spec);

// Pontryagin function H(t, x, p, u) = p . dynamics(t, x, u).
double hamiltonian(const ProblemSpec& spec, double t,
                   const std::vector<double>& x, const std::vector<double>& p,
                   const std::vector<double>& u);

// Argmax of H over the control set's scan values; ties go to the smallest
// control (scan order is ascending, replacement is strict).
std::vector<double> maximize_hamiltonian(const ProblemSpec& spec, double t,
                                         const std::vector<double>& x,
                                         const std::vector<double>& p);

// Forward-backward sweep on a Mayer-form problem: forward Caputo solve with
// the current control, backward adjoint solve with terminal value
// -terminal_gradient(x(tf)) (the Hamiltonian is maximized under this sign),
// pointwise Hamiltonian maximization, relaxed projected update. Stops when
// the sup-norm control change drops below opts.tol; otherwise returns the
// partial result with converged = false. State and adjoint in the result are
// recomputed for the final control.
SweepResult forward_backward_sweep(const ProblemSpec& spec,
                                   const TimeGrid& grid,
                                   const SweepOptions& opts = {});

// Running cost of a trajectory pair: fractional integral of order alpha of
// L(t, x(t), u(t)) evaluated at tf. Requires the running-cost form.
double evaluate_cost(const ProblemSpec& spec, const GridFunction& x,
                     const GridFunction& u);

}  // namespace focpc
