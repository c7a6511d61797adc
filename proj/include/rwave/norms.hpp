#pragma once

#include <limits>
#include <vector>

#include "rwave/field.hpp"

namespace rwave {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// L^r by collocation quadrature (cell volume weights). r = inf is the grid
// maximum taken on the 2x oversampled physical grid, which reads peaks of
// band-limited fields far more faithfully than the collocation maximum.
double lebesgue_norm(const SpectralField& field, double r);

// Same, but from already-computed physical samples covering the whole box.
double lebesgue_norm_physical(const std::vector<double>& samples, double cell_volume,
                              double r);

// H^sigma (inhomogeneous) or Hdot^sigma (homogeneous) by Parseval.
double sobolev_norm(const SpectralField& field, double sigma, bool homogeneous = false);

// sqrt(|f1|_{H^sigma}^2 + |f2|_{H^{sigma-1}}^2): the product-space norm used
// for data pairs and solver states.
double pair_sobolev_norm(const SpectralField& f1, const SpectralField& f2, double sigma);

struct MixedNormSpec {
  double q = 2.0;      // time exponent, may be kInf
  double r = 2.0;      // space exponent, may be kInf
  double delta = 0.0;  // weight <t>^{-delta}
  double T = 0.0;      // interval [0, T]
};

// Composite-trapezoid time quadrature of (<t>^{-delta} |f(t)|_{L^r})^q over
// uniformly sampled fields on [0, T]; q = inf takes the max over samples.
double mixed_norm(const std::vector<SpectralField>& samples, const MixedNormSpec& spec);

// Same quadrature when the space norms per sample are already known.
double mixed_norm_from_values(const std::vector<double>& space_norms, double t0,
                              double dt, double q, double delta);

struct AdmissibilityReport {
  bool admissible = false;
  bool wave_condition = false;     // 1/q + 1/r <= 1/2
  bool scaling_condition = false;  // 1/q + 3/r == 3/2 - gamma
};

AdmissibilityReport check_admissible(double q, double r, double gamma);

}  // namespace rwave
