#include "focpc/fde_solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "conv_weights.hpp"
#include "focpc/errors.hpp"
#include "focpc/special_functions.hpp"

namespace focpc {

namespace {

constexpr double kDivergenceLimit = 1e12;

void check_state(const std::vector<double>& x, std::size_t step) {
  for (double v : x)
    if (!std::isfinite(v) || std::abs(v) > kDivergenceLimit)
      throw divergence_error("state left the trust region at step " +
                             std::to_string(step));
}

std::vector<double> eval_rhs(const RhsCallback& rhs, double t,
                             const std::vector<double>& x, std::size_t dim) {
  std::vector<double> out = rhs(t, x);
  if (out.size() != dim)
    throw std::invalid_argument("rhs returned a vector of wrong dimension");
  return out;
}

}  // namespace

GridFunction solve_caputo_ivp(const IVPSpec& spec) {
  const TimeGrid& grid = spec.grid;
  const std::size_t n = grid.n_steps;
  const std::size_t d = spec.x0.size();
  if (d == 0) throw std::invalid_argument("solve_caputo_ivp: empty x0");
  if (!spec.rhs) throw std::invalid_argument("solve_caputo_ivp: missing rhs");

  const double a = spec.alpha.value();
  detail::RectWeights rect(n, a);
  detail::TrapWeights trap(n, a);
  const double sp = std::pow(grid.h, a) / std::tgamma(a + 1.0);
  const double sc = std::pow(grid.h, a) / std::tgamma(a + 2.0);

  GridFunction x(grid, d);
  GridFunction f(grid, d);  // rhs history at corrected states
  x.set_node(0, spec.x0);
  f.set_node(0, eval_rhs(spec.rhs, grid.node(0), spec.x0, d));

  std::vector<double> pred(d), corr(d), acc(d);
  for (std::size_t k = 1; k <= n; ++k) {
    const double tk = grid.node(k);

    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      const double w = rect.lag(k - j);
      for (std::size_t i = 0; i < d; ++i) acc[i] += w * f.at(j, i);
    }
    for (std::size_t i = 0; i < d; ++i) pred[i] = spec.x0[i] + sp * acc[i];

    std::vector<double> fp = eval_rhs(spec.rhs, tk, pred, d);

    const double w0 = trap.first(k);
    for (std::size_t i = 0; i < d; ++i) acc[i] = w0 * f.at(0, i);
    for (std::size_t j = 1; j < k; ++j) {
      const double w = trap.interior(k - j);
      for (std::size_t i = 0; i < d; ++i) acc[i] += w * f.at(j, i);
    }
    for (std::size_t i = 0; i < d; ++i)
      corr[i] = spec.x0[i] + sc * (acc[i] + fp[i]);

    check_state(corr, k);
    x.set_node(k, corr);
    f.set_node(k, eval_rhs(spec.rhs, tk, corr, d));
  }
  return x;
}

GridFunction solve_adjoint_backward(const AdjointSpec& spec) {
  const TimeGrid& grid = spec.grid;
  if (!spec.rhs) throw std::invalid_argument("solve_adjoint_backward: missing rhs");
  for (double v : spec.p_terminal)
    if (!std::isfinite(v))
      throw std::invalid_argument("solve_adjoint_backward: p_terminal not finite");

  const double mirror = grid.t0 + grid.tf;
  IVPSpec forward{
      [&spec, mirror](double s, const std::vector<double>& p) {
        return spec.rhs(mirror - s, p);
      },
      spec.p_terminal, grid, spec.alpha};
  return reflect(solve_caputo_ivp(forward));
}

double linear_transition(FractionalOrder alpha, double a, double t, double tau) {
  const double s = tau - t;
  if (alpha.value() == 1.0) return std::exp(a * s);
  if (!(s > 0.0))
    throw std::domain_error(
        "linear_transition: requires t < tau for alpha < 1 (factor is "
        "singular at t = tau)");
  return alpha_exponential(alpha, a, s);
}

}  // namespace focpc
