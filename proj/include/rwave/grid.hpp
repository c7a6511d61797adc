#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace rwave {

// Periodic cubic box standing in for R^3. The side length is 2*pi*M so that
// every integer frequency k in Z^3 is an exact dual lattice point; the dual
// lattice spacing is 1/M.
class Grid {
 public:
  static std::shared_ptr<const Grid> make(int points_per_axis, int box_multiple);

  int n() const { return n_; }
  int box_multiple() const { return M_; }
  double box_length() const { return L_; }
  double volume() const { return L_ * L_ * L_; }
  double spacing() const { return L_ / n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  // Largest integer-lattice cell center retained: |k|_inf <= k_max fits the
  // resolved band with its full unit ball.
  int k_max() const { return n_ / (2 * M_) - 1; }

  // Integer mode index m in (-n/2, n/2] from a storage index along one axis.
  int mode(int i) const { return i <= n_ / 2 ? i : i - n_; }
  int index_of_mode(int m) const { return m >= 0 ? m : m + n_; }

  // Dual lattice point xi = m / M componentwise for flat coefficient index i.
  std::array<double, 3> xi(std::size_t i) const {
    int iz = static_cast<int>(i % n_);
    int iy = static_cast<int>((i / n_) % n_);
    int ix = static_cast<int>(i / (static_cast<std::size_t>(n_) * n_));
    double inv = 1.0 / M_;
    return {mode(ix) * inv, mode(iy) * inv, mode(iz) * inv};
  }

  std::size_t flat(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * n_ + iy) * n_ + iz;
  }

  // |xi| per coefficient slot, precomputed once.
  const std::vector<double>& xi_abs() const { return xi_abs_; }

 private:
  Grid(int n, int M);
  int n_;
  int M_;
  double L_;
  std::vector<double> xi_abs_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int points_per_axis, int box_multiple);

}  // namespace rwave
