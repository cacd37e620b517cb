#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

// Convolution weights for uniform-grid quadrature of weakly singular kernels.
// Shared by the fractional operators and the time-stepping solvers; not part
// of the public interface.

namespace focpc::detail {

// Product-trapezoidal weights: with f replaced by its piecewise-linear
// interpolant on a uniform grid,
//   int_0^{t_k} (t_k - tau)^(mu-1) f(tau) dtau
//     ~= h^mu / Gamma(mu+2) * [ first(k)*f_0 + sum_{0<j<k} d[k-j]*f_j + f_k ].
// Valid for any order mu > 0 (the formula never assumes mu <= 1).
class TrapWeights {
 public:
  TrapWeights(std::size_t n, double mu) : mu_(mu), pow_hi_(n + 2), pow_mu_(n + 1) {
    for (std::size_t m = 0; m < pow_hi_.size(); ++m)
      pow_hi_[m] = std::pow(static_cast<double>(m), mu + 1.0);
    for (std::size_t m = 0; m < pow_mu_.size(); ++m)
      pow_mu_[m] = std::pow(static_cast<double>(m), mu);
    d_.resize(n + 1, 0.0);
    for (std::size_t m = 1; m <= n; ++m)
      d_[m] = pow_hi_[m + 1] + pow_hi_[m - 1] - 2.0 * pow_hi_[m];
  }

  // Weight of f_0 when the target node is k >= 1.
  double first(std::size_t k) const {
    const double kd = static_cast<double>(k);
    return pow_hi_[k - 1] - (kd - 1.0 - mu_) * pow_mu_[k];
  }
  // Weight of f_j for 0 < j < k, a function of the lag m = k - j.
  double interior(std::size_t m) const { return d_[m]; }

 private:
  double mu_;
  std::vector<double> pow_hi_;  // m^(mu+1)
  std::vector<double> pow_mu_;  // m^mu
  std::vector<double> d_;       // second differences of m^(mu+1)
};

// Product-rectangle (left endpoint) weights:
//   int_0^{t_k} (t_k - tau)^(mu-1) f(tau) dtau
//     ~= h^mu / Gamma(mu+1) * sum_{j=0}^{k-1} r[k-j]*f_j.
class RectWeights {
 public:
  RectWeights(std::size_t n, double mu) : r_(n + 1, 0.0) {
    std::vector<double> p(n + 1);
    for (std::size_t m = 0; m <= n; ++m)
      p[m] = std::pow(static_cast<double>(m), mu);
    for (std::size_t m = 1; m <= n; ++m) r_[m] = p[m] - p[m - 1];
  }
  double lag(std::size_t m) const { return r_[m]; }

 private:
  std::vector<double> r_;
};

}  // namespace focpc::detail
