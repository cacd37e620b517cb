#include "focpc/special_functions.hpp"

#include <cmath>
#include <string>

#include "focpc/errors.hpp"

namespace focpc {

namespace {

// Neumaier variant of Kahan summation. The correction also tracks the case
// where the incoming term is larger than the running sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// 1/Gamma(x) for x >= 0, with the pole convention 1/Gamma(0) = 0.
double recip_gamma(double x) {
  if (x == 0.0) return 0.0;
  return 1.0 / std::tgamma(x);
}

// z^n / Gamma(x) with x = n*alpha + beta >= 0. Uses the direct quotient while
// both factors are representable, otherwise evaluates in log space so that
// transient large numerators cancelled by large denominators do not overflow.
double series_term(double z, std::size_t n, double x) {
  if (x == 0.0) return 0.0;
  if (z == 0.0) return n == 0 ? recip_gamma(x) : 0.0;

  const double nd = static_cast<double>(n);
  const double log_num = nd * std::log(std::abs(z));
  if (x < 170.0 && log_num < 690.0)
    return std::pow(z, nd) / std::tgamma(x);

  const double log_mag = log_num - std::lgamma(x);
  if (log_mag > 705.0)
    throw non_convergence_error(
        "mittag_leffler: series term exceeds double range before convergence");
  const double mag = std::exp(log_mag);
  const bool negative = z < 0.0 && (n % 2 == 1);
  return negative ? -mag : mag;
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0))
    throw std::domain_error("gamma: argument must be positive, got " +
                            std::to_string(x));
  return std::tgamma(x);
}

double mittag_leffler(const MLParams& params, double z) {
  if (!(params.alpha >= 0.0))
    throw std::domain_error("mittag_leffler: alpha must be nonnegative");
  if (!(params.beta >= 0.0))
    throw std::domain_error("mittag_leffler: beta must be nonnegative");
  if (!(params.tol > 0.0))
    throw std::invalid_argument("mittag_leffler: tol must be positive");
  if (params.max_terms < 1)
    throw std::invalid_argument("mittag_leffler: max_terms must be at least 1");
  if (std::abs(z) > 50.0)
    throw std::domain_error(
        "mittag_leffler: |z| > 50 is outside the supported domain");
  if (params.alpha == 0.0 && std::abs(z) >= 1.0)
    throw std::domain_error(
        "mittag_leffler: the alpha = 0 geometric series diverges for |z| >= 1");

  CompensatedSum acc;
  // A single tiny term is not proof of convergence: the reciprocal-gamma
  // convention zeroes individual terms (e.g. n = 0 when beta = 0), so stop
  // only after two consecutive sub-tolerance terms.
  std::size_t small_streak = 0;
  for (std::size_t n = 0; n <= params.max_terms; ++n) {
    const double x = static_cast<double>(n) * params.alpha + params.beta;
    const double term = series_term(z, n, x);
    acc.add(term);
    small_streak = std::abs(term) < params.tol ? small_streak + 1 : 0;
    if (small_streak >= 2) return acc.value();
  }
  throw non_convergence_error(
      "mittag_leffler: series did not reach tol within " +
      std::to_string(params.max_terms) + " terms");
}

double alpha_exponential(FractionalOrder alpha, double a, double t, double tol) {
  if (!(t > 0.0))
    throw std::domain_error(
        "alpha_exponential: t must be positive (t^(alpha-1) factor)");
  const double al = alpha.value();
  MLParams params;
  params.alpha = al;
  params.beta = al;
  params.tol = tol;
  return std::pow(t, al - 1.0) * mittag_leffler(params, a * std::pow(t, al));
}

}  // namespace focpc
