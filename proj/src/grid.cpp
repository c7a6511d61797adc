#include "rwave/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace rwave {

namespace {
bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }
}  // namespace

Grid::Grid(int n, int M) : n_(n), M_(M), L_(2.0 * M_PI * M) {
  xi_abs_.resize(size());
  double inv = 1.0 / M_;
  for (int ix = 0; ix < n_; ++ix) {
    double x = mode(ix) * inv;
    for (int iy = 0; iy < n_; ++iy) {
      double y = mode(iy) * inv;
      for (int iz = 0; iz < n_; ++iz) {
        double z = mode(iz) * inv;
        xi_abs_[flat(ix, iy, iz)] = std::sqrt(x * x + y * y + z * z);
      }
    }
  }
}

std::shared_ptr<const Grid> Grid::make(int points_per_axis, int box_multiple) {
  if (!is_power_of_two(points_per_axis) || points_per_axis < 8)
    throw std::invalid_argument("grid: points_per_axis must be a power of two >= 8");
  if (box_multiple < 2)
    throw std::invalid_argument("grid: box_multiple must be >= 2");
  if (points_per_axis / (2 * box_multiple) < 1)
    throw std::invalid_argument("grid: no unit cells fit the resolved band");
  return std::shared_ptr<const Grid>(new Grid(points_per_axis, box_multiple));
}

GridPtr make_grid(int points_per_axis, int box_multiple) {
  return Grid::make(points_per_axis, box_multiple);
}

}  // namespace rwave
