#include "focpc/grid.hpp"

#include <cmath>

namespace focpc {

GridFunction GridFunction::sample_scalar(const TimeGrid& grid,
                                         const std::function<double(double)>& fn) {
  GridFunction out(grid, 1);
  for (std::size_t k = 0; k < grid.n_nodes(); ++k) {
    const double v = fn(grid.node(k));
    if (!std::isfinite(v))
      throw std::invalid_argument("GridFunction::sample_scalar: non-finite sample at node " +
                                  std::to_string(k));
    out.scalar(k) = v;
  }
  return out;
}

GridFunction GridFunction::sample(const TimeGrid& grid, std::size_t dim,
                                  const std::function<std::vector<double>(double)>& fn) {
  GridFunction out(grid, dim);
  for (std::size_t k = 0; k < grid.n_nodes(); ++k) {
    const std::vector<double> v = fn(grid.node(k));
    if (v.size() != dim)
      throw std::invalid_argument("GridFunction::sample: callback dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) {
      if (!std::isfinite(v[i]))
        throw std::invalid_argument("GridFunction::sample: non-finite sample at node " +
                                    std::to_string(k));
      out.at(k, i) = v[i];
    }
  }
  return out;
}

bool GridFunction::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

GridFunction reflect(const GridFunction& f) {
  GridFunction out(f.grid(), f.dim());
  const std::size_t n = f.grid().n_steps;
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t i = 0; i < f.dim(); ++i) out.at(k, i) = f.at(n - k, i);
  return out;
}

}  // namespace focpc
