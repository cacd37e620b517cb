#pragma once

#include "focpc/grid.hpp"
#include "focpc/pmp.hpp"

namespace focpc {

// Resource-management model on [0, T]: stock x grows as Caputo D^alpha x = u x
// with x(0) = x0 > 0, the harvest fraction is 1 - u with u in [0, 1], and the
// objective is to minimize the fractional integral of -(1 - u) x at T. The
// optimal control is bang-bang: grow at u = 1 until the switch time, then
// harvest at u = 0.
struct ResourceParams {
  ResourceParams(FractionalOrder alpha_, double T_, double x0_);

  FractionalOrder alpha;
  double T;
  double x0;
};

// t* = T - Gamma(alpha + 1)^(1/alpha); lies in (0, T) under the parameter
// invariants.
double switch_time(const ResourceParams& params);

// 1 before t*, 0 from t* on (the switch instant belongs to the harvest
// interval). Requires t in [0, T].
double analytic_control(const ResourceParams& params, double t);

// x0 * E_alpha(t^alpha) up to t*, constant at the t* value afterwards.
// Requires t in [0, T]; tol is forwarded to the Mittag-Leffler series.
double analytic_state(const ResourceParams& params, double t,
                      double tol = 1e-14);

// First adjoint component: (T - t)^alpha / Gamma(alpha + 1) on [t*, T] and
// the alpha-exponential e_alpha(1, t* - t) before t*. The left branch blows
// up toward t* for alpha < 1 (its formula does not attain the anchor value
// 1); the right branch owns t = t* exactly. Requires t in [0, T].
double analytic_adjoint_p1(const ResourceParams& params, double t);

// Second adjoint component, constant 1 on the whole horizon. Requires t in
// [0, T].
double analytic_adjoint_p2(const ResourceParams& params, double t);

// Running-cost form of the problem (lagrangian -(1 - u) x, dynamics u x,
// control box [0, 1]), ready for reduce_to_mayer.
ProblemSpec make_problem_spec(const ResourceParams& params);

}  // namespace focpc
