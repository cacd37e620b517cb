#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace focpc {

// Fractional order restricted to (0, 1]. Every operator in this library is a
// single-order operator; alpha = 1 selects the classical (integer-order) path
// where one exists.
class FractionalOrder {
 public:
  explicit FractionalOrder(double a) : value_(a) {
    if (!(a > 0.0) || !(a <= 1.0))
      throw std::domain_error("fractional order must lie in (0, 1], got " +
                              std::to_string(a));
  }
  double value() const { return value_; }

 private:
  double value_;
};

// Uniform grid on [t0, tf] with n_steps cells and n_steps + 1 nodes.
struct TimeGrid {
  TimeGrid(double t0_, double tf_, std::size_t n_steps_)
      : t0(t0_), tf(tf_), n_steps(n_steps_) {
    if (!(tf > t0))
      throw std::invalid_argument("TimeGrid: tf must exceed t0");
    if (n_steps < 2)
      throw std::invalid_argument("TimeGrid: need at least 2 steps");
    h = (tf - t0) / static_cast<double>(n_steps);
  }

  double t0;
  double tf;
  std::size_t n_steps;
  double h;

  std::size_t n_nodes() const { return n_steps + 1; }
  double node(std::size_t k) const { return t0 + static_cast<double>(k) * h; }
  bool same_as(const TimeGrid& o) const {
    return t0 == o.t0 && tf == o.tf && n_steps == o.n_steps;
  }
};

// d-dimensional samples on a TimeGrid, stored node-major.
class GridFunction {
 public:
  GridFunction(const TimeGrid& grid, std::size_t dim)
      : grid_(grid), dim_(dim), data_(grid.n_nodes() * dim, 0.0) {
    if (dim == 0)
      throw std::invalid_argument("GridFunction: dimension must be positive");
  }

  // Samples fn at every node; rejects non-finite samples.
  static GridFunction sample_scalar(const TimeGrid& grid,
                                    const std::function<double(double)>& fn);
  static GridFunction sample(
      const TimeGrid& grid, std::size_t dim,
      const std::function<std::vector<double>(double)>& fn);

  const TimeGrid& grid() const { return grid_; }
  std::size_t dim() const { return dim_; }
  std::size_t n_nodes() const { return grid_.n_nodes(); }

  double at(std::size_t k, std::size_t i) const { return data_[k * dim_ + i]; }
  double& at(std::size_t k, std::size_t i) { return data_[k * dim_ + i]; }

  // Shorthand for dim() == 1.
  double scalar(std::size_t k) const { return data_[k * dim_]; }
  double& scalar(std::size_t k) { return data_[k * dim_]; }

  std::span<const double> node_span(std::size_t k) const {
    return {data_.data() + k * dim_, dim_};
  }
  std::vector<double> node_vector(std::size_t k) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(k * dim_),
            data_.begin() + static_cast<std::ptrdiff_t>((k + 1) * dim_)};
  }
  void set_node(std::size_t k, const std::vector<double>& v) {
    if (v.size() != dim_)
      throw std::invalid_argument("GridFunction: node value has wrong dimension");
    for (std::size_t i = 0; i < dim_; ++i) data_[k * dim_ + i] = v[i];
  }

  const std::vector<double>& raw() const { return data_; }
  std::vector<double>& raw() { return data_; }

  bool all_finite() const;

 private:
  TimeGrid grid_;
  std::size_t dim_;
  std::vector<double> data_;
};

// Time reversal s = t0 + tf - t: node k of the result is node n_steps - k of
// the input. Applying it twice is the identity, bit for bit.
GridFunction reflect(const GridFunction& f);

}  // namespace focpc
