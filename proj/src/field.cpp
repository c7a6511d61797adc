#include "rwave/field.hpp"

#include <cmath>
#include <stdexcept>

#include "rwave/fft.hpp"
#include "rwave/kernels.hpp"

namespace rwave {

namespace {

void check_same_grid(const SpectralField& a, const SpectralField& b) {
  if (a.grid.get() != b.grid.get())
    throw std::invalid_argument("field: operands live on different grids");
}

std::size_t half_index(int n, int ix, int iy, int mz) {
  return (static_cast<std::size_t>(ix) * n + iy) * (n / 2 + 1) + mz;
}

}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_same_grid(*this, other);
  for (std::size_t i = 0; i < coef.size(); ++i) coef[i] += other.coef[i];
  is_real = is_real && other.is_real;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  check_same_grid(*this, other);
  for (std::size_t i = 0; i < coef.size(); ++i) coef[i] -= other.coef[i];
  is_real = is_real && other.is_real;
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coef) c *= a;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

double SpectralField::max_hermitian_defect() const {
  int n = grid->n();
  double worst = 0.0;
  for (int ix = 0; ix < n; ++ix) {
    int jx = (n - ix) % n;
    for (int iy = 0; iy < n; ++iy) {
      int jy = (n - iy) % n;
      for (int iz = 0; iz < n; ++iz) {
        int jz = (n - iz) % n;
        cplx d = coef[grid->flat(ix, iy, iz)] - std::conj(coef[grid->flat(jx, jy, jz)]);
        worst = std::max(worst, std::abs(d));
      }
    }
  }
  return worst;
}

void SpectralField::enforce_hermitian() {
  int n = grid->n();
  for (int ix = 0; ix < n; ++ix) {
    int jx = (n - ix) % n;
    for (int iy = 0; iy < n; ++iy) {
      int jy = (n - iy) % n;
      for (int iz = 0; iz < n; ++iz) {
        int jz = (n - iz) % n;
        std::size_t i = grid->flat(ix, iy, iz);
        std::size_t j = grid->flat(jx, jy, jz);
        if (i < j) {
          cplx avg = 0.5 * (coef[i] + std::conj(coef[j]));
          coef[i] = avg;
          coef[j] = std::conj(avg);
        } else if (i == j) {
          coef[i] = cplx(coef[i].real(), 0.0);
        }
      }
    }
  }
  is_real = true;
}

SpectralField transform(const GridPtr& grid, const std::vector<cplx>& samples,
                        bool is_real) {
  if (samples.size() != grid->size())
    throw std::invalid_argument("transform: sample count does not match grid");
  SpectralField out(grid, is_real);
  fft::forward_c2c(grid->n(), samples.data(), out.coef.data());
  double scale = std::sqrt(grid->volume()) / static_cast<double>(grid->size());
  for (auto& c : out.coef) c *= scale;
  return out;
}

std::vector<cplx> inverse_transform(const SpectralField& field) {
  std::vector<cplx> out(field.grid->size());
  fft::backward_c2c(field.grid->n(), field.coef.data(), out.data());
  double scale = 1.0 / std::sqrt(field.grid->volume());
  for (auto& v : out) v *= scale;
  return out;
}

SpectralField transform_real(const GridPtr& grid, const std::vector<double>& samples) {
  if (samples.size() != grid->size())
    throw std::invalid_argument("transform: sample count does not match grid");
  int n = grid->n();
  std::vector<cplx> half(static_cast<std::size_t>(n) * n * (n / 2 + 1));
  fft::forward_r2c(n, samples.data(), half.data());
  SpectralField out(grid, true);
  double scale = std::sqrt(grid->volume()) / static_cast<double>(grid->size());
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      for (int iz = 0; iz < n; ++iz) {
        int mz = grid->mode(iz);
        cplx v = mz >= 0 ? half[half_index(n, ix, iy, mz)]
                         : std::conj(half[half_index(n, (n - ix) % n, (n - iy) % n, -mz)]);
        out.coef[grid->flat(ix, iy, iz)] = scale * v;
      }
    }
  }
  return out;
}

std::vector<double> inverse_transform_real(const SpectralField& field) {
  if (!field.is_real)
    throw std::invalid_argument("inverse_transform_real: field is not flagged real");
  const Grid& g = *field.grid;
  int n = g.n();
  std::vector<cplx> half(static_cast<std::size_t>(n) * n * (n / 2 + 1));
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int mz = 0; mz <= n / 2; ++mz)
        half[half_index(n, ix, iy, mz)] = field.coef[g.flat(ix, iy, g.index_of_mode(mz))];
  std::vector<double> out(g.size());
  fft::backward_c2r(n, half.data(), out.data());
  double scale = 1.0 / std::sqrt(g.volume());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<double> to_physical_oversampled(const SpectralField& field, int factor) {
  if (!field.is_real)
    throw std::invalid_argument("to_physical_oversampled: field is not flagged real");
  const Grid& g = *field.grid;
  int n = g.n();
  int nn = factor * n;
  std::vector<cplx> half(static_cast<std::size_t>(nn) * nn * (nn / 2 + 1), cplx(0.0, 0.0));
  for (int ix = 0; ix < n; ++ix) {
    int mx = g.mode(ix);
    if (std::abs(mx) == n / 2) continue;  // Nyquist planes dropped
    int jx = mx >= 0 ? mx : mx + nn;
    for (int iy = 0; iy < n; ++iy) {
      int my = g.mode(iy);
      if (std::abs(my) == n / 2) continue;
      int jy = my >= 0 ? my : my + nn;
      for (int mz = 0; mz < n / 2; ++mz) {
        half[half_index(nn, jx, jy, mz)] = field.coef[g.flat(ix, iy, g.index_of_mode(mz))];
      }
    }
  }
  std::vector<double> out(static_cast<std::size_t>(nn) * nn * nn);
  fft::backward_c2r(nn, half.data(), out.data());
  double scale = 1.0 / std::sqrt(g.volume());
  for (auto& v : out) v *= scale;
  return out;
}

SpectralField from_physical_oversampled(const GridPtr& grid,
                                        const std::vector<double>& samples,
                                        int factor) {
  const Grid& g = *grid;
  int n = g.n();
  int nn = factor * n;
  if (samples.size() != static_cast<std::size_t>(nn) * nn * nn)
    throw std::invalid_argument("from_physical_oversampled: sample count mismatch");
  std::vector<cplx> half(static_cast<std::size_t>(nn) * nn * (nn / 2 + 1));
  fft::forward_r2c(nn, samples.data(), half.data());
  SpectralField out(grid, true);
  double scale = std::sqrt(g.volume()) / (static_cast<double>(nn) * nn * nn);
  for (int ix = 0; ix < n; ++ix) {
    int mx = g.mode(ix);
    if (std::abs(mx) == n / 2) continue;
    for (int iy = 0; iy < n; ++iy) {
      int my = g.mode(iy);
      if (std::abs(my) == n / 2) continue;
      for (int mz = -(n / 2 - 1); mz < n / 2; ++mz) {
        cplx v = mz >= 0
                     ? half[half_index(nn, mx >= 0 ? mx : mx + nn, my >= 0 ? my : my + nn, mz)]
                     : std::conj(half[half_index(nn, mx <= 0 ? -mx : nn - mx,
                                                 my <= 0 ? -my : nn - my, -mz)]);
        out.coef[g.flat(ix, iy, g.index_of_mode(mz))] = scale * v;
      }
    }
  }
  return out;
}

std::vector<cplx> to_physical_oversampled_complex(const SpectralField& field, int factor) {
  const Grid& g = *field.grid;
  int n = g.n();
  int nn = factor * n;
  std::vector<cplx> big(static_cast<std::size_t>(nn) * nn * nn, cplx(0.0, 0.0));
  for (int ix = 0; ix < n; ++ix) {
    int mx = g.mode(ix);
    if (std::abs(mx) == n / 2) continue;
    int jx = mx >= 0 ? mx : mx + nn;
    for (int iy = 0; iy < n; ++iy) {
      int my = g.mode(iy);
      if (std::abs(my) == n / 2) continue;
      int jy = my >= 0 ? my : my + nn;
      for (int iz = 0; iz < n; ++iz) {
        int mz = g.mode(iz);
        if (std::abs(mz) == n / 2) continue;
        int jz = mz >= 0 ? mz : mz + nn;
        big[(static_cast<std::size_t>(jx) * nn + jy) * nn + jz] =
            field.coef[g.flat(ix, iy, iz)];
      }
    }
  }
  std::vector<cplx> out(big.size());
  fft::backward_c2c(nn, big.data(), out.data());
  double scale = 1.0 / std::sqrt(g.volume());
  for (auto& v : out) v *= scale;
  return out;
}

SpectralField apply_multiplier(const SpectralField& field,
                               const std::function<cplx(const std::array<double, 3>&)>& symbol) {
  SpectralField out = field;
  out.is_real = false;
  for (std::size_t i = 0; i < out.coef.size(); ++i) {
    cplx s = symbol(field.grid->xi(i));
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw std::domain_error("apply_multiplier: non-finite symbol value");
    out.coef[i] *= s;
  }
  return out;
}

SpectralField apply_radial_multiplier(const SpectralField& field,
                                      const std::function<double(double)>& symbol) {
  SpectralField out = field;
  const auto& r = field.grid->xi_abs();
  std::vector<double> table(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    table[i] = symbol(r[i]);
    if (!std::isfinite(table[i]))
      throw std::domain_error("apply_radial_multiplier: non-finite symbol value");
  }
  kernels::apply_real_symbol(out.coef.data(), table.data(), out.coef.size());
  return out;  // real even symbol: reality flag survives
}

SpectralField fractional_laplacian(const SpectralField& field, double s) {
  if (s < 0.0 && std::abs(field.coef[0]) > 0.0)
    throw std::domain_error("fractional_laplacian: negative order on nonzero zero mode");
  return apply_radial_multiplier(
      field, [s](double r) { return r == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(r, s); });
}

SpectralField bessel_potential(const SpectralField& field, double s) {
  return apply_radial_multiplier(
      field, [s](double r) { return std::pow(1.0 + r * r, 0.5 * s); });
}

}  // namespace rwave
