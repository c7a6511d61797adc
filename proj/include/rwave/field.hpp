#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "rwave/grid.hpp"

namespace rwave {

using cplx = std::complex<double>;

// One scalar field stored as Fourier coefficients on the dual lattice, in
// FFT wraparound order. Normalization: f(x) = V^{-1/2} sum_xi c_xi e^{i xi.x},
// so the l2 norm of the coefficients equals the L2 norm of the field.
struct SpectralField {
  GridPtr grid;
  std::vector<cplx> coef;
  bool is_real = false;

  SpectralField() = default;
  explicit SpectralField(GridPtr g, bool real_flag = false)
      : grid(std::move(g)), coef(grid->size(), cplx(0.0, 0.0)), is_real(real_flag) {}

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double a);

  double max_hermitian_defect() const;  // max |c(-xi) - conj(c(xi))|
  void enforce_hermitian();             // symmetrize; Nyquist planes made real
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

// Forward/inverse transforms between physical samples (flat, row-major,
// n^3 values) and spectral coefficients. Complex general path.
SpectralField transform(const GridPtr& grid, const std::vector<cplx>& samples,
                        bool is_real = false);
std::vector<cplx> inverse_transform(const SpectralField& field);

// Real-field fast paths (r2c/c2r). Require is_real.
SpectralField transform_real(const GridPtr& grid, const std::vector<double>& samples);
std::vector<double> inverse_transform_real(const SpectralField& field);

// Physical samples on a factor x oversampled (zero-padded) grid. Nyquist
// planes are dropped, which is exact for fields whose Nyquist planes vanish
// and is the dealiasing convention used throughout. Real path.
std::vector<double> to_physical_oversampled(const SpectralField& field, int factor = 2);
// Forward transform of oversampled real samples, truncated back to the grid.
SpectralField from_physical_oversampled(const GridPtr& grid,
                                        const std::vector<double>& samples,
                                        int factor = 2);

// Complex oversampled magnitude samples (used for L^inf of complex fields).
std::vector<cplx> to_physical_oversampled_complex(const SpectralField& field,
                                                  int factor = 2);

// Coefficientwise product with a symbol evaluated on the dual lattice.
// Preserves is_real iff the caller says the symbol is real and even.
SpectralField apply_multiplier(const SpectralField& field,
                               const std::function<cplx(const std::array<double, 3>&)>& symbol);

// Real radial symbols sigma(|xi|): the common case, tabulated in one pass.
SpectralField apply_radial_multiplier(const SpectralField& field,
                                      const std::function<double(double)>& symbol);

// |nabla|^s and <nabla>^s. For s < 0 the zero mode of |nabla|^s must vanish.
SpectralField fractional_laplacian(const SpectralField& field, double s);
SpectralField bessel_potential(const SpectralField& field, double s);

}  // namespace rwave
