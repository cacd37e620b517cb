#include "focpc/pmp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "focpc/fde_solver.hpp"
#include "focpc/frac_operators.hpp"

namespace focpc {

namespace {

void require_finite(const std::vector<double>& v, const char* who) {
  for (double x : v)
    if (!std::isfinite(x))
      throw std::invalid_argument(std::string(who) + ": non-finite value");
}

// Node index of a time the solver handed back; solvers only call at nodes.
std::size_t node_index(const TimeGrid& grid, double t) {
  const double k = std::round((t - grid.t0) / grid.h);
  if (k < 0.0) return 0;
  const auto idx = static_cast<std::size_t>(k);
  return std::min(idx, grid.n_steps);
}

}  // namespace

ControlSet ControlSet::box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.empty() || lo.size() != hi.size())
    throw std::invalid_argument("ControlSet::box: bounds must be nonempty and equal-sized");
  require_finite(lo, "ControlSet::box");
  require_finite(hi, "ControlSet::box");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i])
      throw std::invalid_argument("ControlSet::box: lower bound exceeds upper bound");
  if (lo.size() > 16)
    throw std::invalid_argument("ControlSet::box: corner scan limited to 16 control dimensions");

  ControlSet s;
  s.is_box_ = true;
  s.dim_ = lo.size();
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);

  // Corners in ascending lexicographic order: component 0 is the most
  // significant selector bit.
  const std::size_t m = s.dim_;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<double> corner(m);
    for (std::size_t i = 0; i < m; ++i)
      corner[i] = (mask >> (m - 1 - i)) & 1 ? s.hi_[i] : s.lo_[i];
    s.scan_.push_back(std::move(corner));
  }
  s.scan_.erase(std::unique(s.scan_.begin(), s.scan_.end()), s.scan_.end());
  return s;
}

ControlSet ControlSet::candidates(std::vector<std::vector<double>> values) {
  if (values.empty())
    throw std::invalid_argument("ControlSet::candidates: empty candidate list");
  const std::size_t m = values.front().size();
  if (m == 0)
    throw std::invalid_argument("ControlSet::candidates: zero-dimensional value");
  for (const auto& v : values) {
    if (v.size() != m)
      throw std::invalid_argument("ControlSet::candidates: inconsistent dimensions");
    require_finite(v, "ControlSet::candidates");
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  ControlSet s;
  s.is_box_ = false;
  s.dim_ = m;
  s.scan_ = std::move(values);
  return s;
}

std::vector<double> ControlSet::project(const std::vector<double>& u) const {
  if (u.size() != dim_)
    throw std::invalid_argument("ControlSet::project: wrong dimension");
  if (is_box_) {
    std::vector<double> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      out[i] = std::clamp(u[i], lo_[i], hi_[i]);
    return out;
  }
  const std::vector<double>* best = &scan_.front();
  double best_d2 = 0.0;
  bool first = true;
  for (const auto& v : scan_) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) d2 += (u[i] - v[i]) * (u[i] - v[i]);
    if (first || d2 < best_d2) {
      best = &v;
      best_d2 = d2;
      first = false;
    }
  }
  return *best;
}

std::vector<double> ControlSet::initial_value() const {
  if (!is_box_) return scan_.front();
  std::vector<double> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = 0.5 * (lo_[i] + hi_[i]);
  return out;
}

bool ControlSet::contains(const std::vector<double>& u, double tol) const {
  if (u.size() != dim_) return false;
  if (is_box_) {
    for (std::size_t i = 0; i < dim_; ++i)
      if (u[i] < lo_[i] - tol || u[i] > hi_[i] + tol) return false;
    return true;
  }
  for (const auto& v : scan_) {
    bool close = true;
    for (std::size_t i = 0; i < dim_; ++i)
      if (std::abs(u[i] - v[i]) > tol) {
        close = false;
        break;
      }
    if (close) return true;
  }
  return false;
}

ProblemSpec reduce_to_mayer(const ProblemSpec& spec) {
  if (!spec.lagrangian)
    throw std::invalid_argument("reduce_to_mayer: no lagrangian to fold");
  if (!spec.lagrangian_gradient_x)
    throw std::invalid_argument(
        "reduce_to_mayer: lagrangian_gradient_x required to assemble the "
        "augmented Jacobian");
  if (!spec.dynamics || !spec.dynamics_jacobian_x)
    throw std::invalid_argument("reduce_to_mayer: dynamics callbacks missing");

  const std::size_t d = spec.state_dim();
  auto f = spec.dynamics;
  auto jac = spec.dynamics_jacobian_x;
  auto lag = spec.lagrangian;
  auto dlag = spec.lagrangian_gradient_x;
  auto g = spec.terminal_cost;
  auto dg = spec.terminal_gradient;

  auto split = [](const std::vector<double>& X) {
    return std::vector<double>(X.begin() + 1, X.end());
  };

  DynamicsFn dyn_aug = [f, lag, d, split](double t, const std::vector<double>& X,
                                          const std::vector<double>& u) {
    const std::vector<double> x = split(X);
    std::vector<double> out(d + 1);
    out[0] = lag(t, x, u);
    const std::vector<double> fx = f(t, x, u);
    std::copy(fx.begin(), fx.end(), out.begin() + 1);
    return out;
  };

  DynamicsFn jac_aug = [jac, dlag, d, split](double t, const std::vector<double>& X,
                                             const std::vector<double>& u) {
    const std::vector<double> x = split(X);
    const std::size_t D = d + 1;
    std::vector<double> out(D * D, 0.0);  // column 0 stays zero: nothing depends on y
    const std::vector<double> gl = dlag(t, x, u);
    for (std::size_t j = 0; j < d; ++j) out[j + 1] = gl[j];
    const std::vector<double> J = jac(t, x, u);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out[(i + 1) * D + (j + 1)] = J[i * d + j];
    return out;
  };

  auto g_aug = [g, split](const std::vector<double>& X) {
    return X[0] + (g ? g(split(X)) : 0.0);
  };
  auto dg_aug = [dg, d, split](const std::vector<double>& X) {
    std::vector<double> out(d + 1, 0.0);
    out[0] = 1.0;
    if (dg) {
      const std::vector<double> gx = dg(split(X));
      std::copy(gx.begin(), gx.end(), out.begin() + 1);
    }
    return out;
  };

  std::vector<double> x0_aug(d + 1, 0.0);
  std::copy(spec.x0.begin(), spec.x0.end(), x0_aug.begin() + 1);

  return ProblemSpec{dyn_aug,
                     jac_aug,
                     ScalarFieldFn{},
                     DynamicsFn{},
                     g_aug,
                     dg_aug,
                     spec.control_set,
                     std::move(x0_aug),
                     spec.t0,
                     spec.tf,
                     spec.alpha};
}

double hamiltonian(const ProblemSpec& spec, double t,
                   const std::vector<double>& x, const std::vector<double>& p,
                   const std::vector<double>& u) {
  const std::vector<double> fx = spec.dynamics(t, x, u);
  if (fx.size() != p.size())
    throw std::invalid_argument("hamiltonian: dimension mismatch");
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) h += p[i] * fx[i];
  return h;
}

std::vector<double> maximize_hamiltonian(const ProblemSpec& spec, double t,
                                         const std::vector<double>& x,
                                         const std::vector<double>& p) {
  const auto& values = spec.control_set.scan_values();
  const std::vector<double>* best = &values.front();
  double best_h = hamiltonian(spec, t, x, p, *best);
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double h = hamiltonian(spec, t, x, p, values[i]);
    if (h > best_h) {
      best = &values[i];
      best_h = h;
    }
  }
  return *best;
}

SweepResult forward_backward_sweep(const ProblemSpec& spec,
                                   const TimeGrid& grid,
                                   const SweepOptions& opts) {
  if (!spec.is_mayer())
    throw std::invalid_argument(
        "forward_backward_sweep: running-cost form; call reduce_to_mayer first");
  if (!spec.terminal_cost || !spec.terminal_gradient)
    throw std::invalid_argument("forward_backward_sweep: terminal cost callbacks missing");
  if (!(opts.tol > 0.0))
    throw std::invalid_argument("forward_backward_sweep: tol must be positive");
  if (!(opts.relaxation >= 0.0 && opts.relaxation < 1.0))
    throw std::invalid_argument("forward_backward_sweep: relaxation must lie in [0, 1)");
  if (opts.max_iters == 0)
    throw std::invalid_argument("forward_backward_sweep: max_iters must be positive");
  if (grid.t0 != spec.t0 || grid.tf != spec.tf)
    throw std::invalid_argument("forward_backward_sweep: grid span differs from problem horizon");

  const std::size_t n = grid.n_steps;
  const std::size_t d = spec.state_dim();
  const std::size_t m = spec.control_set.dim();
  const double theta = opts.relaxation;

  GridFunction u(grid, m);
  {
    const std::vector<double> u0 = spec.control_set.initial_value();
    for (std::size_t k = 0; k <= n; ++k) u.set_node(k, u0);
  }

  auto solve_state = [&](const GridFunction& ctrl) {
    IVPSpec ivp{[&spec, &ctrl, &grid](double t, const std::vector<double>& x) {
                  return spec.dynamics(t, x, ctrl.node_vector(node_index(grid, t)));
                },
                spec.x0, grid, spec.alpha};
    return solve_caputo_ivp(ivp);
  };

  auto solve_costate = [&](const GridFunction& state, const GridFunction& ctrl) {
    std::vector<double> p_term = spec.terminal_gradient(state.node_vector(n));
    for (double& v : p_term) v = -v;
    AdjointSpec adj{
        [&spec, &state, &ctrl, &grid, d](double t, const std::vector<double>& p) {
          const std::size_t k = node_index(grid, t);
          const std::vector<double> J =
              spec.dynamics_jacobian_x(t, state.node_vector(k), ctrl.node_vector(k));
          std::vector<double> out(d, 0.0);  // out_i = sum_j p_j * df_j/dx_i
          for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i) out[i] += p[j] * J[j * d + i];
          return out;
        },
        std::move(p_term), grid, spec.alpha};
    return solve_adjoint_backward(adj);
  };

  GridFunction x(grid, d);
  GridFunction p(grid, d);

  std::vector<double> history;
  bool converged = false;
  std::size_t iters = 0;
  double change = 0.0;

  while (iters < opts.max_iters) {
    ++iters;
    x = solve_state(u);
    p = solve_costate(x, u);

    change = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const std::vector<double> best =
          maximize_hamiltonian(spec, grid.node(k), x.node_vector(k), p.node_vector(k));
      std::vector<double> mixed(m);
      for (std::size_t i = 0; i < m; ++i)
        mixed[i] = theta * u.at(k, i) + (1.0 - theta) * best[i];
      mixed = spec.control_set.project(mixed);
      for (std::size_t i = 0; i < m; ++i)
        change = std::max(change, std::abs(mixed[i] - u.at(k, i)));
      u.set_node(k, mixed);
    }
    history.push_back(change);
    if (change < opts.tol) {
      converged = true;
      break;
    }
  }

  x = solve_state(u);
  p = solve_costate(x, u);

  return SweepResult{u,
                     x,
                     p,
                     spec.terminal_cost(x.node_vector(n)),
                     iters,
                     converged,
                     change,
                     std::move(history)};
}

double evaluate_cost(const ProblemSpec& spec, const GridFunction& x,
                     const GridFunction& u) {
  if (!spec.lagrangian)
    throw std::invalid_argument("evaluate_cost: running-cost form required");
  if (!x.grid().same_as(u.grid()))
    throw std::invalid_argument("evaluate_cost: state and control grids differ");

  GridFunction integrand(x.grid(), 1);
  for (std::size_t k = 0; k < x.n_nodes(); ++k)
    integrand.scalar(k) =
        spec.lagrangian(x.grid().node(k), x.node_vector(k), u.node_vector(k));
  return rl_integral_left(integrand, spec.alpha).scalar(x.grid().n_steps);
}

}  // namespace focpc
