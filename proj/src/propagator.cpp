#include "rwave/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace rwave {

SpectralField free_evolution(const DataPair& data, double t) {
  const auto& r = data.f1.grid->xi_abs();
  SpectralField out(data.f1.grid, data.f1.is_real && data.f2.is_real);
  for (std::size_t i = 0; i < r.size(); ++i)
    out.coef[i] = std::cos(t * r[i]) * data.f1.coef[i] + snc(t, r[i]) * data.f2.coef[i];
  return out;
}

SpectralField free_velocity(const DataPair& data, double t) {
  const auto& r = data.f1.grid->xi_abs();
  SpectralField out(data.f1.grid, data.f1.is_real && data.f2.is_real);
  for (std::size_t i = 0; i < r.size(); ++i)
    out.coef[i] = -r[i] * std::sin(t * r[i]) * data.f1.coef[i] +
                  std::cos(t * r[i]) * data.f2.coef[i];
  return out;
}

SpectralField modified_evolution(const DataPair& data, double t) {
  const auto& r = data.f1.grid->xi_abs();
  SpectralField out(data.f1.grid, data.f1.is_real && data.f2.is_real);
  for (std::size_t i = 0; i < r.size(); ++i) {
    double jap = std::sqrt(1.0 + r[i] * r[i]);
    out.coef[i] = -(r[i] / jap) * std::sin(t * r[i]) * data.f1.coef[i] +
                  (std::cos(t * r[i]) / jap) * data.f2.coef[i];
  }
  return out;
}

FreeEvolutionSampler::FreeEvolutionSampler(DataPair data)
    : data_(std::move(data)), cached_t_(0.0) {}

void FreeEvolutionSampler::refresh(double t) {
  if (has_cache_ && t == cached_t_) return;
  const auto& r = data_.f1.grid->xi_abs();
  cos_t_.resize(r.size());
  snc_t_.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    cos_t_[i] = std::cos(t * r[i]);
    snc_t_[i] = snc(t, r[i]);
  }
  cached_t_ = t;
  has_cache_ = true;
}

SpectralField FreeEvolutionSampler::u(double t) {
  refresh(t);
  SpectralField out(data_.f1.grid, data_.f1.is_real && data_.f2.is_real);
  for (std::size_t i = 0; i < out.coef.size(); ++i)
    out.coef[i] = cos_t_[i] * data_.f1.coef[i] + snc_t_[i] * data_.f2.coef[i];
  return out;
}

SpectralField FreeEvolutionSampler::u_t(double t) {
  refresh(t);
  const auto& r = data_.f1.grid->xi_abs();
  SpectralField out(data_.f1.grid, data_.f1.is_real && data_.f2.is_real);
  for (std::size_t i = 0; i < out.coef.size(); ++i)
    out.coef[i] = -r[i] * r[i] * snc_t_[i] * data_.f1.coef[i] + cos_t_[i] * data_.f2.coef[i];
  return out;
}

SpectralField FreeEvolutionSampler::u_tilde(double t) {
  refresh(t);
  const auto& r = data_.f1.grid->xi_abs();
  SpectralField out(data_.f1.grid, data_.f1.is_real && data_.f2.is_real);
  for (std::size_t i = 0; i < out.coef.size(); ++i) {
    double jap = std::sqrt(1.0 + r[i] * r[i]);
    out.coef[i] = (-(r[i] * r[i]) * snc_t_[i] * data_.f1.coef[i] / jap) +
                  (cos_t_[i] / jap) * data_.f2.coef[i];
  }
  return out;
}

SpectralField duhamel(const std::vector<SpectralField>& forcing, double t) {
  if (forcing.size() < 2)
    throw std::invalid_argument("duhamel: need at least two forcing samples");
  const GridPtr& grid = forcing.front().grid;
  const auto& r = grid->xi_abs();
  double ds = t / static_cast<double>(forcing.size() - 1);
  SpectralField out(grid, true);
  bool real_flag = true;
  for (std::size_t j = 0; j < forcing.size(); ++j) {
    double s = ds * static_cast<double>(j);
    double w = (j == 0 || j + 1 == forcing.size()) ? 0.5 * ds : ds;
    real_flag = real_flag && forcing[j].is_real;
    const auto& c = forcing[j].coef;
    for (std::size_t i = 0; i < c.size(); ++i)
      out.coef[i] += w * snc(t - s, r[i]) * c[i];
  }
  out.is_real = real_flag;
  return out;
}

}  // namespace rwave
