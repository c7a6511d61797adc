#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rwave/field.hpp"

namespace rwave {

// Smooth unit-scale partition of unity on frequency space. psi is built from
// the radial bump phi0(xi) = exp(-1/(1 - |xi/rho|^2)) for |xi| < rho with
// rho = 0.99, normalized by its integer translates: psi(xi) = phi0(xi) /
// sum_k phi0(xi - k). psi is even, supported in B(0,1), and the translates
// {psi(. - k)} sum to one at every point.
class UnitPartition {
 public:
  static constexpr double kRho = 0.99;

  // Value of the un-normalized bump at xi.
  static double bump(const std::array<double, 3>& xi);
  // psi(xi) itself.
  static double psi(const std::array<double, 3>& xi);
  // psi(xi - k) for integer cell k.
  static double psi_shifted(const std::array<double, 3>& xi, const std::array<int, 3>& k);
};

// Per-grid table of the cells touching each dual lattice point with their
// partition weights. Built once and cached; randomization is then a single
// fused pass over coefficients.
class PartitionTable {
 public:
  struct Entry {
    std::int16_t kx, ky, kz;
    double w;  // psi(xi - k)
  };

  static const PartitionTable& for_grid(const GridPtr& grid);

  // Entries for coefficient slot i.
  const Entry* begin(std::size_t i) const { return entries_.data() + offsets_[i]; }
  const Entry* end(std::size_t i) const { return entries_.data() + offsets_[i + 1]; }

 private:
  explicit PartitionTable(const Grid& grid);
  std::vector<std::uint32_t> offsets_;
  std::vector<Entry> entries_;
};

// P_k f: multiply coefficients by psi(xi - k). Throws if |k|_inf exceeds the
// grid's retained cell range.
SpectralField unit_projection(const SpectralField& field, const std::array<int, 3>& k);

// Sum of P_k f over all cells |k|_inf <= bound (bound < 0 means every cell
// touching the dual lattice, i.e. the full partition including boundary
// cells).
SpectralField unit_projection_sum(const SpectralField& field, int bound = -1);

// Inhomogeneous Littlewood-Paley block. phi is a radial C^inf cutoff with
// phi = 1 on |xi| <= 1 and phi = 0 on |xi| > 2; P_1 = phi(xi), and for dyadic
// N >= 2, P_N = phi(xi/N) - phi(2 xi/N). The fattened block satisfies
// lp_projection(lp_projection(f, N), N, true) == lp_projection(f, N).
double lp_cutoff(double r);  // the radial profile of phi
SpectralField lp_projection(const SpectralField& field, int N, bool fattened = false);

}  // namespace rwave
