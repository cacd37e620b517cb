#include "focpc/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "focpc/fde_solver.hpp"
#include "focpc/frac_operators.hpp"
#include "focpc/grid.hpp"
#include "focpc/special_functions.hpp"

namespace focpc {

namespace {

struct Suite {
  std::vector<PropertyResult> results;
  std::string only;

  bool wants(const std::string& family) const {
    return only.empty() || only == family;
  }
  void below(const std::string& family, const std::string& name,
             double measured, double bound) {
    results.push_back({family, name, measured, bound, measured <= bound});
  }
  void above(const std::string& family, const std::string& name,
             double measured, double bound) {
    results.push_back({family, name, measured, bound, measured >= bound});
  }
};

double ml(double alpha, double beta, double z) {
  return mittag_leffler({alpha, beta, 1e-14, 200}, z);
}

// Reference for E_{1/2,1}: e^(z^2) * erfc(-z).
double ml_half_reference(double z) {
  return std::exp(z * z) * std::erfc(-z);
}

double sup_error(const GridFunction& got,
                 const std::function<double(double)>& want) {
  double e = 0.0;
  for (std::size_t k = 0; k < got.n_nodes(); ++k)
    e = std::max(e, std::abs(got.scalar(k) - want(got.grid().node(k))));
  return e;
}

void check_ml(Suite& s) {
  double r = 0.0;
  for (double z : {-2.0, -1.0, 0.0, 1.0, 2.0})
    r = std::max(r, std::abs(ml(1, 1, z) - std::exp(z)));
  s.below("ml", "E_{1,1}(z) = exp(z), z in {-2..2}", r, 1e-8);

  s.below("ml", "E_{1,2}(1) = e - 1", std::abs(ml(1, 2, 1) - (std::numbers::e - 1.0)),
          1e-10);
  s.below("ml", "E_{0,1}(0.5) = 2", std::abs(ml(0, 1, 0.5) - 2.0), 1e-12);

  r = 0.0;
  for (double a : {0.3, 0.5, 0.9, 1.0})
    for (double b : {0.3, 0.5, 0.9, 1.0})
      r = std::max(r, std::abs(ml(a, b, 0.0) - 1.0 / std::tgamma(b)));
  s.below("ml", "E_{a,b}(0) = 1/Gamma(b)", r, 1e-12);

  r = 0.0;
  for (double z : {-1.0, -0.5, 0.5, 1.0, 2.0})
    r = std::max(r, std::abs(ml(0.5, 1, z) - ml_half_reference(z)));
  s.below("ml", "E_{1/2,1}(z) = exp(z^2) erfc(-z)", r, 1e-10);

  r = 0.0;
  for (double z : {-1.0, 0.5, 1.0})
    r = std::max(r, std::abs(ml(1, 0, z) - z * std::exp(z)));
  s.below("ml", "E_{1,0}(z) = z exp(z)", r, 1e-12);
}

double composition_residual(std::size_t n, double alpha,
                            const std::function<double(double)>& f) {
  TimeGrid grid(0.0, 1.0, n);
  return check_composition(GridFunction::sample_scalar(grid, f),
                           FractionalOrder(alpha));
}

void check_comp(Suite& s) {
  auto square = [](double t) { return t * t; };
  const double r1000 = composition_residual(1000, 0.5, square);
  s.below("composition", "I^a(cD^a t^2) - (t^2 - 0), a=0.5, N=1000", r1000, 0.01);
  const double r2000 = composition_residual(2000, 0.5, square);
  s.below("composition", "halving h shrinks the t^2 residual", r2000,
          r1000);

  s.below("composition", "constant input, a=0.3",
          composition_residual(200, 0.3, [](double) { return 3.7; }), 1e-12);
  s.below("composition", "f(t)=t, a=1, N=100",
          composition_residual(100, 1.0, [](double t) { return t; }), 1e-10);
}

void check_ibp(Suite& s) {
  TimeGrid grid(0.0, 1.0, 2000);
  const FractionalOrder half(0.5);

  auto lin = GridFunction::sample_scalar(grid, [](double t) { return t; });
  auto one = GridFunction::sample_scalar(grid, [](double) { return 1.0; });
  s.below("ibp", "f(t)=t, g=1, a=0.5, N=2000",
          check_integration_by_parts(lin, one, half), 0.02);

  auto sq = GridFunction::sample_scalar(grid, [](double t) { return t * t; });
  auto ramp = GridFunction::sample_scalar(grid, [](double t) { return 1.0 - t; });
  s.below("ibp", "f(t)=t^2, g=1-t, a=0.5, N=2000",
          check_integration_by_parts(sq, ramp, half), 0.05);

  auto zero = GridFunction::sample_scalar(grid, [](double) { return 0.0; });
  auto wavy = GridFunction::sample_scalar(grid, [](double t) { return std::sin(3 * t); });
  s.below("ibp", "f=0 annihilates every term",
          check_integration_by_parts(zero, wavy, half), 1e-12);
}

void check_gronwall(Suite& s) {
  {
    TimeGrid grid(0.0, 1.0, 200);
    auto a = GridFunction::sample_scalar(
        grid, [](double t) { return 1.0 + std::sin(t) * std::sin(t); });
    auto b = GridFunction::sample_scalar(grid, [](double) { return 0.0; });
    GridFunction bound = gronwall_bound(a, b, FractionalOrder(0.5));
    double r = 0.0;
    for (std::size_t k = 0; k < bound.n_nodes(); ++k)
      r = std::max(r, std::abs(bound.scalar(k) - a.scalar(k)));
    s.below("gronwall", "b = 0 returns a unchanged", r, 1e-14);
  }
  {
    TimeGrid grid(0.0, 1.0, 100);
    auto one = GridFunction::sample_scalar(grid, [](double) { return 1.0; });
    GridFunction bound = gronwall_bound(one, one, FractionalOrder(1.0));
    s.below("gronwall", "a=b=1, alpha=1: bound(1) = e",
            std::abs(bound.scalar(100) - std::numbers::e), 0.01);
  }
  {
    // a = b = 1, alpha = 1/2: the bound telescopes to E_{1/2}(Gamma(1/2) t^(1/2)).
    TimeGrid grid(0.0, 1.0, 100);
    auto one = GridFunction::sample_scalar(grid, [](double) { return 1.0; });
    GridFunction bound = gronwall_bound(one, one, FractionalOrder(0.5), 60);
    const double want = ml_half_reference(std::sqrt(std::numbers::pi));
    s.below("gronwall", "a=b=1, alpha=0.5: bound(1) = exp(pi) erfc(-sqrt(pi))",
            std::abs(bound.scalar(100) - want), 1e-10);
  }
  {
    // u solving u = 1 + Gamma(a) I^a u satisfies the hypothesis with equality;
    // the bound may undershoot only by series truncation.
    TimeGrid grid(0.0, 1.0, 100);
    const FractionalOrder half(0.5);
    const double ga = std::tgamma(0.5);
    GridFunction u = GridFunction::sample_scalar(grid, [](double) { return 1.0; });
    for (int it = 0; it < 200; ++it) {
      GridFunction next = rl_integral_left(u, half);
      double change = 0.0;
      for (std::size_t k = 0; k < u.n_nodes(); ++k) {
        const double v = 1.0 + ga * next.scalar(k);
        change = std::max(change, std::abs(v - u.scalar(k)));
        next.scalar(k) = v;
      }
      u = next;
      if (change < 1e-12) break;
    }
    auto one = GridFunction::sample_scalar(grid, [](double) { return 1.0; });
    GridFunction bound = gronwall_bound(one, one, half);
    double worst = 0.0;  // most negative slack bound - u
    for (std::size_t k = 0; k < u.n_nodes(); ++k)
      worst = std::min(worst, bound.scalar(k) - u.scalar(k));
    s.above("gronwall", "fixed point of the hypothesis stays below the bound",
            worst, -10.0 * grid.h);
  }
}

void check_meanvalue(Suite& s) {
  {
    TimeGrid grid(0.0, 1.0, 200);
    auto c = GridFunction::sample_scalar(grid, [](double) { return 4.2; });
    s.below("meanvalue", "constant function: ratio equals the constant",
            std::abs(check_mean_value(c, FractionalOrder(0.7), 150) - 4.2), 1e-12);
  }
  {
    TimeGrid grid(0.0, 1.0, 200);
    auto lin = GridFunction::sample_scalar(grid, [](double t) { return t; });
    s.below("meanvalue", "f(t)=t, a=0.5, x=1: ratio = 2/3",
            std::abs(check_mean_value(lin, FractionalOrder(0.5), 200) - 2.0 / 3.0),
            5.0 * grid.h);
  }
  {
    TimeGrid grid(0.0, 1.0, 200);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_int_distribution<std::size_t> node(1, grid.n_steps);
    const double alphas[] = {0.3, 0.5, 0.7, 0.9, 1.0};
    double violation = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      double c[5];
      for (double& v : c) v = coeff(rng);
      auto f = GridFunction::sample_scalar(grid, [&c](double t) {
        return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4])));
      });
      const std::size_t x_index = node(rng);
      const double alpha = alphas[trial % 5];
      const double r = check_mean_value(f, FractionalOrder(alpha), x_index);
      double lo = f.scalar(0), hi = f.scalar(0);
      for (std::size_t k = 1; k <= x_index; ++k) {
        lo = std::min(lo, f.scalar(k));
        hi = std::max(hi, f.scalar(k));
      }
      violation = std::max(violation, std::max(lo - r, r - hi));
    }
    s.below("meanvalue", "20 seeded polynomials: ratio within [min f, max f]",
            violation, 5.0 * grid.h);
  }
}

void check_taylor(Suite& s) {
  const FractionalOrder half(0.5);
  const std::vector<double> ones(9, 1.0);
  const double x = 0.5;

  // Sequential Caputo derivatives of E_a(t^a) at 0 are all 1, so the partial
  // sum must agree with the truncated defining series termwise.
  double r = 0.0;
  for (std::size_t n = 0; n <= 8; ++n) {
    double series = 0.0;
    for (std::size_t k = 0; k <= n; ++k)
      series += std::pow(std::pow(x, 0.5), k) / std::tgamma(0.5 * k + 1.0);
    r = std::max(r, std::abs(taylor_partial_sum(half, n, ones, 0.0, x) - series));
  }
  s.below("taylor", "partial sums equal the truncated E_a series", r, 1e-14);

  const double full = ml(0.5, 1.0, std::pow(x, 0.5));
  double worst_step = -1.0;  // max increase of the remainder, must stay <= 0
  double prev = std::abs(full - taylor_partial_sum(half, 1, ones, 0.0, x));
  for (std::size_t n = 2; n <= 8; ++n) {
    const double rem = std::abs(full - taylor_partial_sum(half, n, ones, 0.0, x));
    worst_step = std::max(worst_step, rem - prev);
    prev = rem;
  }
  s.below("taylor", "remainder decreases monotonically, n = 1..8", worst_step, 0.0);

  s.below("taylor", "n=0 partial sum is coeffs[0]",
          std::abs(taylor_partial_sum(half, 0, {7.5}, 1.0, 3.0) - 7.5), 1e-15);

  s.below("taylor", "alpha=1 reduces to the classical Taylor polynomial",
          std::abs(taylor_partial_sum(FractionalOrder(1.0), 8, ones, 0.0, 0.5) -
                   std::exp(0.5)),
          1e-8);
}

void check_linearity(Suite& s) {
  TimeGrid grid(0.0, 1.0, 150);
  auto f = GridFunction::sample_scalar(grid, [](double t) { return std::sin(2 * t) + 1; });
  auto g = GridFunction::sample_scalar(grid, [](double t) { return t * t - 0.5 * t; });
  GridFunction mix(grid, 1);
  for (std::size_t k = 0; k <= grid.n_steps; ++k)
    mix.scalar(k) = 2.0 * f.scalar(k) - 3.0 * g.scalar(k);

  struct Op {
    const char* name;
    std::function<GridFunction(const GridFunction&)> apply;
  };
  const Op ops[] = {
      {"rl_integral_left, a=0.5",
       [](const GridFunction& v) { return rl_integral_left(v, FractionalOrder(0.5)); }},
      {"rl_integral_right, a=0.3",
       [](const GridFunction& v) { return rl_integral_right(v, FractionalOrder(0.3)); }},
      {"caputo_left, a=0.7",
       [](const GridFunction& v) { return caputo_left(v, FractionalOrder(0.7)); }},
      {"rl_derivative_right, a=0.5",
       [](const GridFunction& v) { return rl_derivative_right(v, FractionalOrder(0.5)); }},
  };
  for (const Op& op : ops) {
    GridFunction lhs = op.apply(mix);
    GridFunction rf = op.apply(f);
    GridFunction rg = op.apply(g);
    double r = 0.0;
    for (std::size_t k = 0; k <= grid.n_steps; ++k)
      r = std::max(r, std::abs(lhs.scalar(k) -
                               (2.0 * rf.scalar(k) - 3.0 * rg.scalar(k))));
    s.below("linearity", std::string("L(2f - 3g) = 2Lf - 3Lg: ") + op.name, r,
            1e-11);
  }
}

double ivp_error(double alpha, std::size_t n) {
  TimeGrid grid(0.0, 1.0, n);
  IVPSpec ivp{[](double, const std::vector<double>& x) {
                return std::vector<double>{x[0]};
              },
              {1.0},
              grid,
              FractionalOrder(alpha)};
  GridFunction x = solve_caputo_ivp(ivp);
  return sup_error(x, [alpha](double t) {
    return mittag_leffler({alpha, 1.0, 1e-14, 200}, std::pow(t, alpha));
  });
}

void check_convergence(Suite& s) {
  for (double alpha : {0.5, 0.75, 1.0}) {
    const double e500 = ivp_error(alpha, 500);
    const double e1000 = ivp_error(alpha, 1000);
    const double need = std::pow(2.0, std::min(2.0, 1.0 + alpha)) * 0.6;
    s.above("convergence",
            "IVP error drop 500 -> 1000, alpha = " + std::to_string(alpha),
            e500 / e1000, need);
    s.below("convergence",
            "IVP error at N=2000, alpha = " + std::to_string(alpha),
            ivp_error(alpha, 2000), 1e-3);
  }
  {
    const double exact_scale = std::tgamma(3.0) / std::tgamma(3.5);
    auto err = [exact_scale](std::size_t n) {
      TimeGrid grid(0.0, 1.0, n);
      auto f = GridFunction::sample_scalar(grid, [](double t) { return t * t; });
      GridFunction got = rl_integral_left(f, FractionalOrder(0.5));
      return sup_error(got, [exact_scale](double t) {
        return exact_scale * std::pow(t, 2.5);
      });
    };
    s.above("convergence", "rl_integral_left t^2 halving ratio, a=0.5",
            err(250) / err(500), std::pow(2.0, 1.5) * 0.7);
  }
}

}  // namespace

std::vector<PropertyResult> run_validation(const std::string& only) {
  static const char* families[] = {"ml",        "composition", "ibp",
                                   "gronwall",  "meanvalue",   "taylor",
                                   "linearity", "convergence"};
  if (!only.empty() &&
      std::none_of(std::begin(families), std::end(families),
                   [&only](const char* f) { return only == f; }))
    throw std::invalid_argument("unknown validation family: " + only);

  Suite s;
  s.only = only;
  if (s.wants("ml")) check_ml(s);
  if (s.wants("composition")) check_comp(s);
  if (s.wants("ibp")) check_ibp(s);
  if (s.wants("gronwall")) check_gronwall(s);
  if (s.wants("meanvalue")) check_meanvalue(s);
  if (s.wants("taylor")) check_taylor(s);
  if (s.wants("linearity")) check_linearity(s);
  if (s.wants("convergence")) check_convergence(s);
  return s.results;
}

}  // namespace focpc
