#pragma once

#include <cstddef>
#include <vector>

#include "focpc/grid.hpp"

namespace focpc {

// Discretized fractional operators on uniform grids. All operators act
// componentwise on vector-valued grid functions and preserve the grid.
//
// Conventions shared by the derivative discretizations:
//  - Node 0 of a left-sided derivative (node N of a right-sided one) is where
//    the continuum value may be singular or undefined; it is assigned the
//    value of the adjacent node (one-sided extension) whenever the direct
//    formula does not apply.
//  - Right-sided operators are evaluated by reflecting the samples through
//    s = t0 + tf - t, applying the left-sided code path, and reflecting back.

// Left Riemann-Liouville integral of order alpha via product-trapezoidal
// quadrature. Exact for affine data; order >= 1 + alpha for smooth data.
// Result at node 0 is zero.
GridFunction rl_integral_left(const GridFunction& f, FractionalOrder alpha);

// Right Riemann-Liouville integral (reflection of the left one). Result at
// the terminal node is zero.
GridFunction rl_integral_right(const GridFunction& f, FractionalOrder alpha);

// Left Caputo derivative. L1 scheme for alpha < 1; for alpha = 1, central
// differences at interior nodes and one-sided differences at the ends.
GridFunction caputo_left(const GridFunction& f, FractionalOrder alpha);

// Left Riemann-Liouville derivative for alpha < 1, split as
//   D^alpha f = f(t0) * (t - t0)^(-alpha) / Gamma(1 - alpha)  +  Caputo part,
// so the singular contribution of a nonzero left endpoint is carried in
// closed form. Throws std::domain_error at alpha = 1 (the classical
// derivative lives in caputo_left).
GridFunction rl_derivative_left(const GridFunction& f, FractionalOrder alpha);

// Right Riemann-Liouville derivative for alpha < 1, via reflection of
// rl_derivative_left. Throws std::domain_error at alpha = 1, where the
// operator degenerates to -d/dt.
GridFunction rl_derivative_right(const GridFunction& f, FractionalOrder alpha);

// Max-norm residual over all nodes of I^alpha(cD^alpha f)(t) - (f(t) - f(t0)).
double check_composition(const GridFunction& f, FractionalOrder alpha);

// Residual of fractional integration by parts on [a, b] for scalar f, g:
//   | int g * cD^alpha f dt - int f * (right RL derivative of g) dt
//     - [ (right RL integral of order 1-alpha of g) * f ]_a^b |
// with plain trapezoidal time integration. Requires alpha < 1.
double check_integration_by_parts(const GridFunction& f, const GridFunction& g,
                                  FractionalOrder alpha);

// Right-hand side of the generalized Gronwall inequality for scalar data:
//   bound(t) = a(t) + int_0^t sum_{n=1}^{n_series}
//              (b(t) Gamma(alpha))^n / Gamma(n alpha) (t-s)^(n alpha - 1) a(s) ds,
// evaluated with the same weakly singular quadrature at order n*alpha per
// term. Requires a, b nonnegative and b nondecreasing. Terminates the series
// early once a term's sup norm drops below 1e-14.
GridFunction gronwall_bound(const GridFunction& a_fn, const GridFunction& b_fn,
                            FractionalOrder alpha, std::size_t n_series = 30);

// Fractional mean-value ratio r = I^alpha f(x) / ((x - a)^alpha / Gamma(1+alpha))
// at node x_index > 0 of a scalar f. The mean-value property asserts
// min f <= r <= max f over [a, x].
double check_mean_value(const GridFunction& f, FractionalOrder alpha,
                        std::size_t x_index);

// Partial sum of the generalized Taylor expansion,
//   sum_{k=0}^{n} coeffs[k] (x - a)^(k alpha) / Gamma(k alpha + 1),
// where coeffs[k] is the k-th sequential Caputo derivative of f at a.
// Requires x >= a and coeffs.size() >= n + 1.
double taylor_partial_sum(FractionalOrder alpha, std::size_t n,
                          const std::vector<double>& coeffs, double a, double x);

}  // namespace focpc
