#include "focpc/resource_example.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "focpc/special_functions.hpp"

namespace focpc {

namespace {

double growth_threshold(FractionalOrder alpha) {
  const double a = alpha.value();
  return std::pow(std::tgamma(a + 1.0), 1.0 / a);
}

void require_in_horizon(const ResourceParams& params, double t) {
  if (!(t >= 0.0) || !(t <= params.T))
    throw std::domain_error("resource example: t = " + std::to_string(t) +
                            " outside [0, " + std::to_string(params.T) + "]");
}

}  // namespace

ResourceParams::ResourceParams(FractionalOrder alpha_, double T_, double x0_)
    : alpha(alpha_), T(T_), x0(x0_) {
  if (!std::isfinite(T) || !std::isfinite(x0))
    throw std::invalid_argument("ResourceParams: T and x0 must be finite");
  if (!(x0 > 0.0))
    throw std::invalid_argument("ResourceParams: initial stock x0 must be positive");
  const double bound = growth_threshold(alpha);
  if (!(T > bound))
    throw std::invalid_argument(
        "ResourceParams: horizon too short for a growth phase; requires "
        "T > Gamma(alpha+1)^(1/alpha) = " +
        std::to_string(bound) + ", got T = " + std::to_string(T));
}

double switch_time(const ResourceParams& params) {
  return params.T - growth_threshold(params.alpha);
}

double analytic_control(const ResourceParams& params, double t) {
  require_in_horizon(params, t);
  return t < switch_time(params) ? 1.0 : 0.0;
}

double analytic_state(const ResourceParams& params, double t, double tol) {
  require_in_horizon(params, t);
  const double a = params.alpha.value();
  const double te = std::min(t, switch_time(params));
  return params.x0 *
         mittag_leffler({a, 1.0, tol, 200}, std::pow(te, a));
}

double analytic_adjoint_p1(const ResourceParams& params, double t) {
  require_in_horizon(params, t);
  const double a = params.alpha.value();
  const double ts = switch_time(params);
  if (t >= ts) return std::pow(params.T - t, a) / std::tgamma(a + 1.0);
  if (a == 1.0) return std::exp(ts - t);
  return alpha_exponential(params.alpha, 1.0, ts - t);
}

double analytic_adjoint_p2(const ResourceParams& params, double t) {
  require_in_horizon(params, t);
  return 1.0;
}

ProblemSpec make_problem_spec(const ResourceParams& params) {
  return ProblemSpec{
      [](double, const std::vector<double>& x, const std::vector<double>& u) {
        return std::vector<double>{u[0] * x[0]};
      },
      [](double, const std::vector<double>&, const std::vector<double>& u) {
        return std::vector<double>{u[0]};
      },
      [](double, const std::vector<double>& x, const std::vector<double>& u) {
        return -(1.0 - u[0]) * x[0];
      },
      [](double, const std::vector<double>&, const std::vector<double>& u) {
        return std::vector<double>{-(1.0 - u[0])};
      },
      {},
      {},
      ControlSet::box({0.0}, {1.0}),
      {params.x0},
      0.0,
      params.T,
      params.alpha};
}

}  // namespace focpc
