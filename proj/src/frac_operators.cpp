#include "focpc/frac_operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "conv_weights.hpp"

namespace focpc {

namespace {

// Product-trapezoidal evaluation of (1/Gamma(mu)) int_{t0}^{t_k} (t_k-tau)^(mu-1) f dtau
// for arbitrary order mu > 0. Componentwise; node 0 is zero (empty integral).
GridFunction weak_integral(const GridFunction& f, double mu) {
  const TimeGrid& grid = f.grid();
  const std::size_t n = grid.n_steps;
  const std::size_t d = f.dim();
  GridFunction out(grid, d);

  detail::TrapWeights w(n, mu);
  const double scale = std::pow(grid.h, mu) / std::tgamma(mu + 2.0);
  const std::vector<double>& data = f.raw();

  std::vector<double> acc(d);
  for (std::size_t k = 1; k <= n; ++k) {
    const double w0 = w.first(k);
    for (std::size_t i = 0; i < d; ++i) acc[i] = w0 * data[i];
    for (std::size_t j = 1; j < k; ++j) {
      const double wj = w.interior(k - j);
      const double* fj = data.data() + j * d;
      for (std::size_t i = 0; i < d; ++i) acc[i] += wj * fj[i];
    }
    const double* fk = data.data() + k * d;
    for (std::size_t i = 0; i < d; ++i)
      out.at(k, i) = scale * (acc[i] + fk[i]);
  }
  return out;
}

// Plain composite trapezoidal rule over the whole grid (scalar input).
double trapezoid(const GridFunction& f) {
  const std::size_t n = f.grid().n_steps;
  double acc = 0.5 * (f.scalar(0) + f.scalar(n));
  for (std::size_t k = 1; k < n; ++k) acc += f.scalar(k);
  return acc * f.grid().h;
}

GridFunction pointwise_product(const GridFunction& f, const GridFunction& g) {
  GridFunction out(f.grid(), 1);
  for (std::size_t k = 0; k < f.n_nodes(); ++k)
    out.scalar(k) = f.scalar(k) * g.scalar(k);
  return out;
}

void require_scalar(const GridFunction& f, const char* who) {
  if (f.dim() != 1)
    throw std::invalid_argument(std::string(who) + ": scalar grid function required");
}

}  // namespace

GridFunction rl_integral_left(const GridFunction& f, FractionalOrder alpha) {
  return weak_integral(f, alpha.value());
}

GridFunction rl_integral_right(const GridFunction& f, FractionalOrder alpha) {
  return reflect(weak_integral(reflect(f), alpha.value()));
}

GridFunction caputo_left(const GridFunction& f, FractionalOrder alpha) {
  const TimeGrid& grid = f.grid();
  const std::size_t n = grid.n_steps;
  const std::size_t d = f.dim();
  const double a = alpha.value();
  GridFunction out(grid, d);

  if (a == 1.0) {
    // Classical derivative: central differences inside, one-sided at the ends.
    const double h = grid.h;
    for (std::size_t i = 0; i < d; ++i) {
      out.at(0, i) = (f.at(1, i) - f.at(0, i)) / h;
      out.at(n, i) = (f.at(n, i) - f.at(n - 1, i)) / h;
    }
    for (std::size_t k = 1; k < n; ++k)
      for (std::size_t i = 0; i < d; ++i)
        out.at(k, i) = (f.at(k + 1, i) - f.at(k - 1, i)) / (2.0 * h);
    return out;
  }

  // L1 scheme: convolution of first differences with c_m = (m+1)^(1-a) - m^(1-a).
  std::vector<double> c(n);
  {
    std::vector<double> p(n + 1);
    for (std::size_t m = 0; m <= n; ++m)
      p[m] = std::pow(static_cast<double>(m), 1.0 - a);
    for (std::size_t m = 0; m < n; ++m) c[m] = p[m + 1] - p[m];
  }
  const double scale = std::pow(grid.h, -a) / std::tgamma(2.0 - a);

  std::vector<double> acc(d);
  for (std::size_t k = 1; k <= n; ++k) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t j = 1; j <= k; ++j) {
      const double cm = c[k - j];
      for (std::size_t i = 0; i < d; ++i)
        acc[i] += cm * (f.at(j, i) - f.at(j - 1, i));
    }
    for (std::size_t i = 0; i < d; ++i) out.at(k, i) = scale * acc[i];
  }
  // Node 0: the L1 formula has no history there; extend from t_1.
  for (std::size_t i = 0; i < d; ++i) out.at(0, i) = out.at(1, i);
  return out;
}

GridFunction rl_derivative_left(const GridFunction& f, FractionalOrder alpha) {
  const double a = alpha.value();
  if (a == 1.0)
    throw std::domain_error(
        "rl_derivative_left: alpha = 1 degenerates to d/dt; use caputo_left");

  const TimeGrid& grid = f.grid();
  const std::size_t n = grid.n_steps;
  const std::size_t d = f.dim();
  GridFunction out = caputo_left(f, alpha);

  const double rg = 1.0 / std::tgamma(1.0 - a);
  for (std::size_t i = 0; i < d; ++i) {
    const double f0 = f.at(0, i);
    if (f0 == 0.0) continue;  // singular part vanishes identically
    for (std::size_t k = 1; k <= n; ++k)
      out.at(k, i) += f0 * rg * std::pow(grid.node(k) - grid.t0, -a);
    // (t - t0)^(-alpha) is infinite at node 0; extend from t_1.
    out.at(0, i) = out.at(1, i);
  }
  return out;
}

GridFunction rl_derivative_right(const GridFunction& f, FractionalOrder alpha) {
  if (alpha.value() == 1.0)
    throw std::domain_error(
        "rl_derivative_right: alpha = 1 degenerates to -d/dt; differentiate directly");
  return reflect(rl_derivative_left(reflect(f), alpha));
}

double check_composition(const GridFunction& f, FractionalOrder alpha) {
  GridFunction composed = rl_integral_left(caputo_left(f, alpha), alpha);
  double residual = 0.0;
  for (std::size_t k = 0; k < f.n_nodes(); ++k)
    for (std::size_t i = 0; i < f.dim(); ++i)
      residual = std::max(residual,
                          std::abs(composed.at(k, i) - (f.at(k, i) - f.at(0, i))));
  return residual;
}

double check_integration_by_parts(const GridFunction& f, const GridFunction& g,
                                  FractionalOrder alpha) {
  require_scalar(f, "check_integration_by_parts");
  require_scalar(g, "check_integration_by_parts");
  if (!f.grid().same_as(g.grid()))
    throw std::invalid_argument("check_integration_by_parts: grids differ");
  const double a = alpha.value();
  if (a == 1.0)
    throw std::domain_error(
        "check_integration_by_parts: requires alpha in (0, 1)");

  const std::size_t n = f.grid().n_steps;
  const double lhs = trapezoid(pointwise_product(g, caputo_left(f, alpha)));
  const double rhs = trapezoid(pointwise_product(f, rl_derivative_right(g, alpha)));

  // Boundary bracket [ I_right^(1-alpha) g * f ]_a^b; the upper end vanishes
  // because the right integral is empty at t = b.
  GridFunction ig = rl_integral_right(g, FractionalOrder(1.0 - a));
  const double boundary = ig.scalar(n) * f.scalar(n) - ig.scalar(0) * f.scalar(0);

  return std::abs(lhs - rhs - boundary);
}

GridFunction gronwall_bound(const GridFunction& a_fn, const GridFunction& b_fn,
                            FractionalOrder alpha, std::size_t n_series) {
  require_scalar(a_fn, "gronwall_bound");
  require_scalar(b_fn, "gronwall_bound");
  if (!a_fn.grid().same_as(b_fn.grid()))
    throw std::invalid_argument("gronwall_bound: grids differ");
  if (n_series < 1)
    throw std::invalid_argument("gronwall_bound: n_series must be positive");

  const std::size_t nodes = a_fn.n_nodes();
  for (std::size_t k = 0; k < nodes; ++k) {
    if (a_fn.scalar(k) < 0.0 || b_fn.scalar(k) < 0.0)
      throw std::invalid_argument("gronwall_bound: a and b must be nonnegative");
    if (k > 0 && b_fn.scalar(k) < b_fn.scalar(k - 1))
      throw std::invalid_argument("gronwall_bound: b must be nondecreasing");
  }

  const double al = alpha.value();
  const double ga = std::tgamma(al);
  GridFunction bound(a_fn.grid(), 1);
  for (std::size_t k = 0; k < nodes; ++k) bound.scalar(k) = a_fn.scalar(k);

  // Series term n contributes (b(t) Gamma(alpha))^n * I^(n alpha) a (t); the
  // kernel integral absorbs the 1/Gamma(n alpha) of the written form.
  for (std::size_t term = 1; term <= n_series; ++term) {
    const double mu = static_cast<double>(term) * al;
    GridFunction in = weak_integral(a_fn, mu);
    double sup = 0.0;
    for (std::size_t k = 0; k < nodes; ++k) {
      const double v =
          std::pow(b_fn.scalar(k) * ga, static_cast<double>(term)) * in.scalar(k);
      bound.scalar(k) += v;
      sup = std::max(sup, std::abs(v));
    }
    if (sup < 1e-14) break;
  }
  return bound;
}

double check_mean_value(const GridFunction& f, FractionalOrder alpha,
                        std::size_t x_index) {
  require_scalar(f, "check_mean_value");
  if (x_index == 0 || x_index > f.grid().n_steps)
    throw std::invalid_argument("check_mean_value: x_index out of range");

  const double al = alpha.value();
  const double x = f.grid().node(x_index);
  const double integral = rl_integral_left(f, alpha).scalar(x_index);
  const double denom =
      std::pow(x - f.grid().t0, al) / std::tgamma(1.0 + al);
  return integral / denom;
}

double taylor_partial_sum(FractionalOrder alpha, std::size_t n,
                          const std::vector<double>& coeffs, double a, double x) {
  if (coeffs.size() < n + 1)
    throw std::invalid_argument("taylor_partial_sum: need n + 1 coefficients");
  if (x < a)
    throw std::domain_error("taylor_partial_sum: requires x >= a");

  const double al = alpha.value();
  double sum = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double e = static_cast<double>(k) * al;
    sum += coeffs[k] * std::pow(x - a, e) / std::tgamma(e + 1.0);
  }
  return sum;
}

}  // namespace focpc
