#pragma once

#include <cstddef>

#include "focpc/grid.hpp"

namespace focpc {

// Parameters of the two-parameter Mittag-Leffler series
//   E_{alpha,beta}(z) = sum_{n>=0} z^n / Gamma(n*alpha + beta).
//
// alpha = 0 is accepted only in the geometric regime |z| < 1, where the
// series sums to 1/((1-z)*Gamma(beta)). beta = 0 is accepted under the
// reciprocal-gamma convention 1/Gamma(0) = 0, which drops the n = 0 term and
// gives e.g. E_{1,0}(z) = z*exp(z).
struct MLParams {
  double alpha = 1.0;
  double beta = 1.0;
  double tol = 1e-14;          // absolute term-magnitude cutoff
  std::size_t max_terms = 200; // series budget before non_convergence_error
};

// Euler gamma for x > 0. Relative error <= 1e-13 over the usable range;
// overflows to +inf for x > ~171.6. Throws std::domain_error for x <= 0.
double gamma(double x);

// Truncated Mittag-Leffler series, summed in ascending n with compensated
// accumulation. Stops at the first term whose magnitude drops below
// params.tol (that term is included); throws non_convergence_error if the
// budget runs out first. The evaluator is restricted to |z| <= 50; larger
// arguments throw std::domain_error. Deterministic: identical inputs produce
// bit-identical results.
double mittag_leffler(const MLParams& params, double z);

// Scalar alpha-exponential e_alpha(a, t) = t^(alpha-1) * E_{alpha,alpha}(a*t^alpha).
// The prefactor is singular at t = 0 for alpha < 1, so t must be positive.
double alpha_exponential(FractionalOrder alpha, double a, double t,
                         double tol = 1e-14);

}  // namespace focpc
