#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "rwave/field.hpp"

namespace rwave {

enum class Distribution { gaussian, rademacher, uniform_compact };

Distribution distribution_from_string(const std::string& name);
std::string to_string(Distribution d);

// One draw of the random coefficient ensemble on the retained integer
// lattice |k|_inf <= k_max. The independent generators are h_0 and
// {Re h_k, Im h_k} over the half lattice I (first nonzero coordinate
// positive); h_{-k} = conj(h_k) always, h_0 real. Generators have variance
// 1/2 for k in I and variance 1 for h_0, so E|h_k|^2 = 1 for every k.
// Same for l.
struct RandomCoefficients {
  int k_max = 0;
  std::uint64_t seed = 0;
  Distribution dist = Distribution::gaussian;
  std::vector<cplx> h, l;  // (2 k_max + 1)^3 lattice, flattened

  int side() const { return 2 * k_max + 1; }
  std::size_t index(int kx, int ky, int kz) const {
    return (static_cast<std::size_t>(kx + k_max) * side() + (ky + k_max)) * side() +
           (kz + k_max);
  }
  cplx h_at(int kx, int ky, int kz) const { return h[index(kx, ky, kz)]; }
  cplx l_at(int kx, int ky, int kz) const { return l[index(kx, ky, kz)]; }
};

// Membership in the half lattice I (Z^3 = I + (-I) + {0} disjointly).
bool in_half_lattice(int kx, int ky, int kz);

// Counter-based sampling: bitwise reproducible from (seed, k) alone,
// independent of evaluation order.
RandomCoefficients sample_coefficients(Distribution dist, std::uint64_t seed, int k_max);

// Stable per-draw seed derivation for Monte Carlo campaigns.
std::uint64_t derive_draw_seed(std::uint64_t base_seed, std::uint64_t draw_index);

struct DataPair {
  SpectralField f1;  // position data, regularity s
  SpectralField f2;  // velocity data, regularity s - 1
  double s = 0.0;
};

// f^omega: each unit frequency cell of f multiplied by its random
// coefficient, realized as a single multiplier pass with the tabulated
// partition. Real data stays real.
DataPair randomize(const DataPair& f, const RandomCoefficients& coeffs);

// Cross-check oracle: the half-lattice real-part expansion
// h_0 P_0 f + 2 sum_{k in I} (Re h_k Re P_k f - Im h_k Im P_k f),
// assembled from the Re/Im split of each cell instead of the combined
// multiplier.
DataPair expand_real_part(const DataPair& f, const RandomCoefficients& coeffs);

// Deterministic seed profiles at prescribed regularity: |f1^(xi)| =
// amplitude <xi>^{-s - 3/2 - eps0} with Hermitian-symmetric unit phases,
// supported in the resolved band |xi|_inf <= k_max (so the retained cells
// carry the data exactly). profile: "powerlaw" (the above) or "bump"
// (Gaussian decay, effectively smooth).
DataPair synthesize_data(double s, double amplitude, const std::string& profile,
                         const GridPtr& grid);

// Binary sidecar for exact replay (magic "RWCF").
void write_coefficients(const std::string& path, const RandomCoefficients& coeffs);
RandomCoefficients read_coefficients(const std::string& path);

}  // namespace rwave
