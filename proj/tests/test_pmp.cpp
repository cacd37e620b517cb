#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "focpc/fde_solver.hpp"
#include "focpc/pmp.hpp"
#include "focpc/resource_example.hpp"

using namespace focpc;

namespace {

// Alternative reduction of the resource problem: the accumulator integrates
// the harvested amount and the terminal cost negates it. Equivalent to the
// library's reduction (which folds the sign into the accumulator rate) under
// y -> -y.
ProblemSpec harvest_accumulator_resource(double alpha, double T, double x0) {
  return ProblemSpec{
      [](double, const std::vector<double>& X, const std::vector<double>& u) {
        return std::vector<double>{(1.0 - u[0]) * X[1], u[0] * X[1]};
      },
      [](double, const std::vector<double>&, const std::vector<double>& u) {
        return std::vector<double>{0.0, 1.0 - u[0], 0.0, u[0]};
      },
      {},
      {},
      [](const std::vector<double>& X) { return -X[0]; },
      [](const std::vector<double>&) {
        return std::vector<double>{-1.0, 0.0};
      },
      ControlSet::box({0.0}, {1.0}),
      {0.0, x0},
      0.0,
      T,
      FractionalOrder(alpha)};
}

double sup_diff(const GridFunction& a, const GridFunction& b, std::size_t dim_a,
                std::size_t dim_b) {
  double e = 0.0;
  for (std::size_t k = 0; k < a.n_nodes(); ++k)
    e = std::max(e, std::abs(a.at(k, dim_a) - b.at(k, dim_b)));
  return e;
}

}  // namespace

TEST_CASE("ControlSet box: corners, projection, midpoint start") {
  ControlSet box = ControlSet::box({0.0, -1.0}, {1.0, 2.0});
  CHECK(box.dim() == 2);
  const auto& corners = box.scan_values();
  REQUIRE(corners.size() == 4);
  CHECK(corners[0] == std::vector<double>{0.0, -1.0});
  CHECK(corners[1] == std::vector<double>{0.0, 2.0});
  CHECK(corners[2] == std::vector<double>{1.0, -1.0});
  CHECK(corners[3] == std::vector<double>{1.0, 2.0});
  CHECK(box.project({-0.5, 5.0}) == std::vector<double>{0.0, 2.0});
  CHECK(box.project({0.4, 0.5}) == std::vector<double>{0.4, 0.5});
  CHECK(box.initial_value() == std::vector<double>{0.5, 0.5});
  CHECK(box.contains({0.5, 0.0}));
  CHECK_FALSE(box.contains({1.5, 0.0}));
  CHECK_THROWS_AS(ControlSet::box({0.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(ControlSet::box({2.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ControlSet::box({}, {}), std::invalid_argument);
}

TEST_CASE("ControlSet candidates: sorted scan, nearest projection, ties") {
  ControlSet set = ControlSet::candidates({{1.0}, {0.0}, {0.5}, {0.5}});
  REQUIRE(set.scan_values().size() == 3);
  CHECK(set.scan_values()[0] == std::vector<double>{0.0});
  CHECK(set.initial_value() == std::vector<double>{0.0});
  CHECK(set.project({0.6}) == std::vector<double>{0.5});
  // Equidistant between 0.5 and 1.0: smallest wins.
  CHECK(set.project({0.75}) == std::vector<double>{0.5});
  CHECK(set.contains({0.5}));
  CHECK_FALSE(set.contains({0.4}));
  CHECK(set.contains({0.4}, 0.11));
  CHECK_THROWS_AS(ControlSet::candidates({}), std::invalid_argument);
  CHECK_THROWS_AS(ControlSet::candidates({{1.0}, {1.0, 2.0}}),
                  std::invalid_argument);
}

TEST_CASE("reduce_to_mayer wires the augmented problem") {
  ResourceParams params(FractionalOrder(0.5), 2.0, 1.0);
  ProblemSpec spec = make_problem_spec(params);
  CHECK_FALSE(spec.is_mayer());
  ProblemSpec mayer = reduce_to_mayer(spec);
  CHECK(mayer.is_mayer());
  CHECK(mayer.state_dim() == 2);
  CHECK(mayer.x0 == std::vector<double>{0.0, 1.0});

  // Augmented dynamics col(L, f) at a sample point.
  const std::vector<double> X{0.3, 2.0};
  const std::vector<double> u{0.25};
  const std::vector<double> dX = mayer.dynamics(0.7, X, u);
  REQUIRE(dX.size() == 2);
  CHECK(dX[0] == doctest::Approx(-(1.0 - 0.25) * 2.0));  // lagrangian row
  CHECK(dX[1] == doctest::Approx(0.25 * 2.0));           // original dynamics

  // Jacobian rows ((0, dL/dx), (0, df/dx)); nothing depends on the
  // accumulator, so column 0 is zero.
  const std::vector<double> J = mayer.dynamics_jacobian_x(0.7, X, u);
  REQUIRE(J.size() == 4);
  CHECK(J[0] == 0.0);
  CHECK(J[1] == doctest::Approx(-(1.0 - 0.25)));
  CHECK(J[2] == 0.0);
  CHECK(J[3] == doctest::Approx(0.25));

  CHECK(mayer.terminal_cost(X) == doctest::Approx(0.3));
  CHECK(mayer.terminal_gradient(X) == std::vector<double>{1.0, 0.0});

  // The original problem is untouched and a Mayer input is rejected.
  CHECK_FALSE(spec.is_mayer());
  CHECK_THROWS_AS(reduce_to_mayer(mayer), std::invalid_argument);

  ProblemSpec no_grad = make_problem_spec(params);
  no_grad.lagrangian_gradient_x = {};
  CHECK_THROWS_AS(reduce_to_mayer(no_grad), std::invalid_argument);
  ProblemSpec no_jac = make_problem_spec(params);
  no_jac.dynamics_jacobian_x = {};
  CHECK_THROWS_AS(reduce_to_mayer(no_jac), std::invalid_argument);
}

TEST_CASE("harvest-accumulator jacobian matches the hand-derived rows") {
  ProblemSpec alt = harvest_accumulator_resource(0.5, 2.0, 1.0);
  const std::vector<double> J =
      alt.dynamics_jacobian_x(0.0, {0.0, 3.0}, {0.25});
  CHECK(J == std::vector<double>{0.0, 0.75, 0.0, 0.25});
}

TEST_CASE("reduction with folded terminal cost: classical Bolza check") {
  // L = u^2, f = u, g = x^2 at alpha = 1 with frozen u = 0.5 on [0, 1]:
  // cost = int u^2 dt + x(1)^2 = 0.25 + 0.25.
  ProblemSpec spec{
      [](double, const std::vector<double>&, const std::vector<double>& u) {
        return std::vector<double>{u[0]};
      },
      [](double, const std::vector<double>&, const std::vector<double>&) {
        return std::vector<double>{0.0};
      },
      [](double, const std::vector<double>&, const std::vector<double>& u) {
        return u[0] * u[0];
      },
      [](double, const std::vector<double>&, const std::vector<double>&) {
        return std::vector<double>{0.0};
      },
      [](const std::vector<double>& x) { return x[0] * x[0]; },
      [](const std::vector<double>& x) {
        return std::vector<double>{2.0 * x[0]};
      },
      ControlSet::candidates({{0.5}}),
      {0.0},
      0.0,
      1.0,
      FractionalOrder(1.0)};
  ProblemSpec mayer = reduce_to_mayer(spec);
  TimeGrid grid(0.0, 1.0, 200);
  SweepResult res = forward_backward_sweep(mayer, grid, {});
  CHECK(res.converged);
  CHECK(res.iterations == 1);  // singleton control set
  CHECK(res.cost == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("zero lagrangian: accumulator and cost stay zero for any control") {
  ProblemSpec spec{
      [](double, const std::vector<double>&, const std::vector<double>& u) {
        return std::vector<double>{u[0]};
      },
      [](double, const std::vector<double>&, const std::vector<double>&) {
        return std::vector<double>{0.0};
      },
      [](double, const std::vector<double>&, const std::vector<double>&) {
        return 0.0;
      },
      [](double, const std::vector<double>&, const std::vector<double>&) {
        return std::vector<double>{0.0};
      },
      {},
      {},
      ControlSet::box({-1.0}, {1.0}),
      {0.0},
      0.0,
      1.0,
      FractionalOrder(0.7)};
  ProblemSpec mayer = reduce_to_mayer(spec);
  TimeGrid grid(0.0, 1.0, 100);
  SweepResult res = forward_backward_sweep(mayer, grid, {});
  CHECK(res.converged);
  CHECK(res.cost == 0.0);
  for (std::size_t k = 0; k <= 100; ++k) CHECK(res.state.at(k, 0) == 0.0);
}

TEST_CASE("hamiltonian is the covector-dynamics pairing") {
  ProblemSpec alt = harvest_accumulator_resource(0.5, 2.0, 1.0);
  // Zero covector kills everything.
  CHECK(hamiltonian(alt, 0.3, {0.1, 2.0}, {0.0, 0.0}, {0.7}) == 0.0);
  // Resource form: H = p1*(1-u)*x + p2*u*x with state ordering (y, x).
  const double x = 2.0, u = 0.25, p1 = 1.0, p2 = 3.0;
  CHECK(hamiltonian(alt, 0.0, {0.0, x}, {p1, p2}, {u}) ==
        doctest::Approx(p1 * (1.0 - u) * x + p2 * u * x));

  // First unit covector picks out the lagrangian row of a reduced problem.
  ResourceParams params(FractionalOrder(0.5), 2.0, 1.0);
  ProblemSpec mayer = reduce_to_mayer(make_problem_spec(params));
  CHECK(hamiltonian(mayer, 0.0, {0.0, x}, {1.0, 0.0}, {u}) ==
        doctest::Approx(-(1.0 - u) * x));

  CHECK_THROWS_AS(hamiltonian(alt, 0.0, {0.0, x}, {1.0}, {u}),
                  std::invalid_argument);
}

TEST_CASE("maximize_hamiltonian: switching law, ties, scaling invariance") {
  ResourceParams params(FractionalOrder(0.5), 2.0, 1.0);
  ProblemSpec mayer = reduce_to_mayer(make_problem_spec(params));
  // With the accumulator covector at -1, H = (1-u)x + p_x u x: grow when
  // p_x > 1, harvest when p_x < 1 (for x > 0).
  CHECK(maximize_hamiltonian(mayer, 0.0, {0.0, 1.0}, {-1.0, 1.5}) ==
        std::vector<double>{1.0});
  CHECK(maximize_hamiltonian(mayer, 0.0, {0.0, 1.0}, {-1.0, 0.5}) ==
        std::vector<double>{0.0});
  // Exact indifference at p_x = 1: smallest admissible value wins.
  CHECK(maximize_hamiltonian(mayer, 0.0, {0.0, 1.0}, {-1.0, 1.0}) ==
        std::vector<double>{0.0});
  // Positive scaling of the covector never moves the argmax.
  for (double c : {0.1, 7.3, 250.0}) {
    CHECK(maximize_hamiltonian(mayer, 0.0, {0.0, 1.0}, {-c, 1.5 * c}) ==
          std::vector<double>{1.0});
    CHECK(maximize_hamiltonian(mayer, 0.0, {0.0, 1.0}, {-c, 0.5 * c}) ==
          std::vector<double>{0.0});
  }
}

TEST_CASE("sweep on the resource problem: classical limit") {
  ResourceParams params(FractionalOrder(1.0), 2.0, 1.0);
  ProblemSpec mayer = reduce_to_mayer(make_problem_spec(params));
  TimeGrid grid(0.0, 2.0, 800);
  // Tight stopping tolerance: the returned control must be a fixed point to
  // microscopic accuracy so the pointwise maximum condition below is testable
  // with an absolute slack.
  SweepOptions opts;
  opts.tol = 1e-12;
  SweepResult res = forward_backward_sweep(mayer, grid, opts);
  REQUIRE(res.converged);

  // Bang-bang within the stopping tolerance.
  for (std::size_t k = 0; k <= 800; ++k) {
    const double u = res.control.scalar(k);
    CHECK(std::min(std::abs(u), std::abs(u - 1.0)) <= 1e-6);
  }

  // Switch node within 2 cells of t* = 1.
  std::size_t sw = 801;
  for (std::size_t k = 0; k <= 800; ++k)
    if (res.control.scalar(k) < 0.5) {
      sw = k;
      break;
    }
  REQUIRE(sw != 801);
  CHECK(std::abs(grid.node(sw) - 1.0) <= 2.0 * grid.h);

  // Classical cost -e.
  CHECK(std::abs(res.cost - (-std::numbers::e)) <= 0.01);

  // Result invariants: admissible control, exact initial state, exact
  // transversality at the terminal node.
  for (std::size_t k = 0; k <= 800; ++k)
    CHECK(mayer.control_set.contains(res.control.node_vector(k), 1e-12));
  CHECK(res.state.at(0, 0) == 0.0);
  CHECK(res.state.at(0, 1) == 1.0);
  CHECK(res.adjoint.at(800, 0) == -1.0);
  CHECK(res.adjoint.at(800, 1) == 0.0);

  // Maximum condition at every node against a sampled control grid.
  for (std::size_t k = 0; k <= 800; ++k) {
    const double h_star =
        hamiltonian(mayer, grid.node(k), res.state.node_vector(k),
                    res.adjoint.node_vector(k), res.control.node_vector(k));
    for (double v : {0.0, 0.25, 0.5, 0.75, 1.0})
      CHECK(h_star >= hamiltonian(mayer, grid.node(k), res.state.node_vector(k),
                                  res.adjoint.node_vector(k), {v}) -
                          1e-9);
  }

  // Convergence trend: the last three control changes are nonincreasing.
  const std::size_t n_hist = res.change_history.size();
  REQUIRE(n_hist >= 3);
  CHECK(res.change_history[n_hist - 2] <= res.change_history[n_hist - 3]);
  CHECK(res.change_history[n_hist - 1] <= res.change_history[n_hist - 2]);
}

TEST_CASE("sweep equivalence of the two reduced presentations") {
  const double alpha = 0.8, T = 2.0, x0 = 1.0;
  ResourceParams params(FractionalOrder(alpha), T, x0);
  ProblemSpec mine = reduce_to_mayer(make_problem_spec(params));
  ProblemSpec alt = harvest_accumulator_resource(alpha, T, x0);
  TimeGrid grid(0.0, T, 400);
  SweepResult a = forward_backward_sweep(mine, grid, {});
  SweepResult b = forward_backward_sweep(alt, grid, {});
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(std::abs(a.cost - b.cost) <= 1e-12);
  CHECK(sup_diff(a.control, b.control, 0, 0) <= 1e-12);
  CHECK(sup_diff(a.state, b.state, 1, 1) <= 1e-12);      // stock trajectory
  CHECK(sup_diff(a.adjoint, b.adjoint, 1, 1) <= 1e-12);  // p_x
  // Accumulator and its covector flip sign between the presentations.
  double e = 0.0;
  for (std::size_t k = 0; k <= 400; ++k) {
    e = std::max(e, std::abs(a.state.at(k, 0) + b.state.at(k, 0)));
    e = std::max(e, std::abs(a.adjoint.at(k, 0) + b.adjoint.at(k, 0)));
  }
  CHECK(e <= 1e-12);
}

TEST_CASE("singleton control set converges in one iteration") {
  ProblemSpec spec{
      [](double, const std::vector<double>& x, const std::vector<double>& u) {
        return std::vector<double>{u[0] - 0.1 * x[0]};
      },
      [](double, const std::vector<double>&, const std::vector<double>&) {
        return std::vector<double>{-0.1};
      },
      {},
      {},
      [](const std::vector<double>& x) { return x[0]; },
      [](const std::vector<double>&) { return std::vector<double>{1.0}; },
      ControlSet::candidates({{0.7}}),
      {1.0},
      0.0,
      1.0,
      FractionalOrder(0.5)};
  TimeGrid grid(0.0, 1.0, 50);
  SweepResult res = forward_backward_sweep(spec, grid, {});
  CHECK(res.converged);
  CHECK(res.iterations == 1);
  for (std::size_t k = 0; k <= 50; ++k) CHECK(res.control.scalar(k) == 0.7);
}

TEST_CASE("sweep option validation") {
  ResourceParams params(FractionalOrder(0.5), 2.0, 1.0);
  ProblemSpec running = make_problem_spec(params);
  ProblemSpec mayer = reduce_to_mayer(running);
  TimeGrid grid(0.0, 2.0, 10);

  CHECK_THROWS_AS(forward_backward_sweep(running, grid, {}),
                  std::invalid_argument);  // not Mayer form
  SweepOptions bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(forward_backward_sweep(mayer, grid, bad),
                  std::invalid_argument);
  bad = {};
  bad.relaxation = 1.0;
  CHECK_THROWS_AS(forward_backward_sweep(mayer, grid, bad),
                  std::invalid_argument);
  bad = {};
  bad.max_iters = 0;
  CHECK_THROWS_AS(forward_backward_sweep(mayer, grid, bad),
                  std::invalid_argument);
  TimeGrid off(0.0, 1.5, 10);
  CHECK_THROWS_AS(forward_backward_sweep(mayer, off, {}),
                  std::invalid_argument);
}

TEST_CASE("non-convergence is reported, not thrown") {
  ResourceParams params(FractionalOrder(0.5), 2.0, 1.0);
  ProblemSpec mayer = reduce_to_mayer(make_problem_spec(params));
  TimeGrid grid(0.0, 2.0, 100);
  SweepOptions opts;
  opts.max_iters = 2;
  SweepResult res = forward_backward_sweep(mayer, grid, opts);
  CHECK_FALSE(res.converged);
  CHECK(res.iterations == 2);
  CHECK(res.control_change_norm >= opts.tol);
}

TEST_CASE("evaluate_cost") {
  ResourceParams params(FractionalOrder(0.5), 2.0, 1.0);
  ProblemSpec spec = make_problem_spec(params);
  TimeGrid grid(0.0, 2.0, 300);

  // u = 1 zeroes the integrand exactly.
  GridFunction u1(grid, 1);
  for (std::size_t k = 0; k <= 300; ++k) u1.scalar(k) = 1.0;
  GridFunction x(grid, 1);
  for (std::size_t k = 0; k <= 300; ++k) x.scalar(k) = 2.0 + std::sin(grid.node(k));
  CHECK(evaluate_cost(spec, x, u1) == 0.0);

  // alpha = 1 is the ordinary integral: compare against the trapezoid rule.
  ResourceParams cparams(FractionalOrder(1.0), 2.0, 1.0);
  ProblemSpec cspec = make_problem_spec(cparams);
  GridFunction uh(grid, 1);
  for (std::size_t k = 0; k <= 300; ++k) uh.scalar(k) = 0.5;
  double trap = 0.0;
  for (std::size_t k = 0; k < 300; ++k) {
    const double a = -(1.0 - 0.5) * x.scalar(k);
    const double b = -(1.0 - 0.5) * x.scalar(k + 1);
    trap += 0.5 * grid.h * (a + b);
  }
  CHECK(evaluate_cost(cspec, x, uh) == doctest::Approx(trap).epsilon(1e-12));

  // Mayer-reduction consistency: the cost equals the accumulator terminal
  // value of the augmented forward solve for a frozen control.
  ProblemSpec mayer = reduce_to_mayer(spec);
  GridFunction uw(grid, 1);
  for (std::size_t k = 0; k <= 300; ++k) {
    const double s = std::sin(3.0 * grid.node(k));
    uw.scalar(k) = 0.3 + 0.4 * s * s;
  }
  IVPSpec aug{[&mayer, &uw, &grid](double t, const std::vector<double>& X) {
                const auto k =
                    static_cast<std::size_t>(std::llround((t - grid.t0) / grid.h));
                return mayer.dynamics(t, X, uw.node_vector(k));
              },
              mayer.x0, grid, mayer.alpha};
  GridFunction X = solve_caputo_ivp(aug);
  IVPSpec orig{[&spec, &uw, &grid](double t, const std::vector<double>& xv) {
                 const auto k =
                     static_cast<std::size_t>(std::llround((t - grid.t0) / grid.h));
                 return spec.dynamics(t, xv, uw.node_vector(k));
               },
               spec.x0, grid, spec.alpha};
  GridFunction xs = solve_caputo_ivp(orig);
  CHECK(std::abs(evaluate_cost(spec, xs, uw) - X.at(300, 0)) <=
        10.0 * std::pow(grid.h, 0.5));

  CHECK_THROWS_AS(evaluate_cost(mayer, x, u1), std::invalid_argument);
  TimeGrid other(0.0, 2.0, 200);
  GridFunction xo(other, 1);
  CHECK_THROWS_AS(evaluate_cost(spec, xo, u1), std::invalid_argument);
}
