#pragma once

#include <functional>
#include <vector>

#include "focpc/grid.hpp"

namespace focpc {

// Vector field callback (t, v) -> dv. Must return a vector of the problem
// dimension with finite entries for finite inputs, and be Lipschitz in v on
// the working domain. Called at grid nodes only; must be reentrant.
using RhsCallback =
    std::function<std::vector<double>(double, const std::vector<double>&)>;

// Forward problem: Caputo derivative of order alpha of x equals rhs(t, x),
// x(t0) = x0.
struct IVPSpec {
  RhsCallback rhs;
  std::vector<double> x0;
  TimeGrid grid;
  FractionalOrder alpha;
};

// Backward problem: right-sided derivative of order alpha of p equals
// rhs(t, p), anchored at the terminal node by p(tf) = p_terminal.
struct AdjointSpec {
  RhsCallback rhs;
  std::vector<double> p_terminal;
  TimeGrid grid;
  FractionalOrder alpha;
};

// Fractional Adams-Bashforth-Moulton predictor-corrector (PECE, one corrector
// pass): product-rectangle predictor, product-trapezoidal corrector. Marches
// the Volterra form x(t) = x0 + I^alpha[rhs(., x)](t); x(t0) = x0 exactly.
// At alpha = 1 this is the classical Euler-predict / trapezoid-correct pair.
// Throws divergence_error when any state component exceeds 1e12 in magnitude
// or turns non-finite.
GridFunction solve_caputo_ivp(const IVPSpec& spec);

// Terminal-value problem marched in reversed time s = t0 + tf - t, which
// turns the right-sided equation into a left-sided one solved forward from
// p_terminal, then reflected back. p(tf) = p_terminal exactly at the terminal
// node. The anchoring treats the terminal condition as a pointwise node
// value; components whose rhs vanishes identically stay constant at their
// terminal value. Accepts alpha = 1 (classical backward ODE).
GridFunction solve_adjoint_backward(const AdjointSpec& spec);

// Scalar state-transition factor Phi_alpha(tau, t) = e_alpha(a, tau - t) for
// backward propagation t < tau with constant coefficient a. At alpha = 1 this
// is exp(a * (tau - t)) for any t, tau; for alpha < 1 the factor is singular
// at t = tau and undefined for t > tau (domain error either way).
double linear_transition(FractionalOrder alpha, double a, double t, double tau);

}  // namespace focpc
