#include "rwave/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace rwave {

double lebesgue_norm_physical(const std::vector<double>& samples, double cell_volume,
                              double r) {
  if (r < 1.0) throw std::invalid_argument("lebesgue_norm: r must be >= 1");
  if (r == kInf) {
    double m = 0.0;
    for (double v : samples) m = std::max(m, std::fabs(v));
    return m;
  }
  double acc = 0.0;
  if (r == 2.0) {
    for (double v : samples) acc += v * v;
  } else if (r == 4.0) {
    for (double v : samples) {
      double w = v * v;
      acc += w * w;
    }
  } else {
    for (double v : samples) acc += std::pow(std::fabs(v), r);
  }
  return std::pow(cell_volume * acc, 1.0 / r);
}

double lebesgue_norm(const SpectralField& field, double r) {
  if (r < 1.0) throw std::invalid_argument("lebesgue_norm: r must be >= 1");
  const Grid& g = *field.grid;
  if (r == kInf) {
    if (field.is_real) {
      auto samples = to_physical_oversampled(field, 2);
      double m = 0.0;
      for (double v : samples) m = std::max(m, std::fabs(v));
      return m;
    }
    auto samples = to_physical_oversampled_complex(field, 2);
    double m = 0.0;
    for (const auto& v : samples) m = std::max(m, std::abs(v));
    return m;
  }
  if (r == 2.0) {
    // Parseval; identical to collocation quadrature for band-limited fields.
    double acc = 0.0;
    for (const auto& c : field.coef) acc += std::norm(c);
    return std::sqrt(acc);
  }
  double cell = g.volume() / static_cast<double>(g.size());
  if (field.is_real) {
    return lebesgue_norm_physical(inverse_transform_real(field), cell, r);
  }
  auto samples = inverse_transform(field);
  double acc = 0.0;
  for (const auto& v : samples) acc += std::pow(std::abs(v), r);
  return std::pow(cell * acc, 1.0 / r);
}

double sobolev_norm(const SpectralField& field, double sigma, bool homogeneous) {
  const auto& r = field.grid->xi_abs();
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double w;
    if (homogeneous) {
      if (r[i] == 0.0) {
        if (sigma < 0.0 && std::abs(field.coef[i]) > 0.0)
          throw std::domain_error("sobolev_norm: singular weight on nonzero zero mode");
        w = sigma == 0.0 ? 1.0 : 0.0;
      } else {
        w = std::pow(r[i], 2.0 * sigma);
      }
    } else {
      w = std::pow(1.0 + r[i] * r[i], sigma);
    }
    acc += w * std::norm(field.coef[i]);
  }
  return std::sqrt(acc);
}

double pair_sobolev_norm(const SpectralField& f1, const SpectralField& f2, double sigma) {
  double a = sobolev_norm(f1, sigma);
  double b = sobolev_norm(f2, sigma - 1.0);
  return std::sqrt(a * a + b * b);
}

double mixed_norm_from_values(const std::vector<double>& space_norms, double t0,
                              double dt, double q, double delta) {
  if (space_norms.empty()) throw std::invalid_argument("mixed_norm: empty sample set");
  auto weight = [delta](double t) { return std::pow(1.0 + t * t, -0.5 * delta); };
  if (q == kInf) {
    double m = 0.0;
    for (std::size_t i = 0; i < space_norms.size(); ++i)
      m = std::max(m, weight(t0 + dt * i) * space_norms[i]);
    return m;
  }
  if (space_norms.size() == 1) return 0.0;  // zero-length interval
  double acc = 0.0;
  for (std::size_t i = 0; i < space_norms.size(); ++i) {
    double g = std::pow(weight(t0 + dt * i) * space_norms[i], q);
    bool endpoint = (i == 0 || i + 1 == space_norms.size());
    acc += (endpoint ? 0.5 : 1.0) * g;
  }
  return std::pow(dt * acc, 1.0 / q);
}

double mixed_norm(const std::vector<SpectralField>& samples, const MixedNormSpec& spec) {
  if (samples.empty()) throw std::invalid_argument("mixed_norm: empty sample set");
  std::vector<double> values(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    values[i] = lebesgue_norm(samples[i], spec.r);
  double dt = samples.size() > 1 ? spec.T / static_cast<double>(samples.size() - 1) : 0.0;
  return mixed_norm_from_values(values, 0.0, dt, spec.q, spec.delta);
}

AdmissibilityReport check_admissible(double q, double r, double gamma) {
  constexpr double tol = 1e-12;
  AdmissibilityReport rep;
  double iq = q == kInf ? 0.0 : 1.0 / q;
  rep.wave_condition = iq + 1.0 / r <= 0.5 + tol;
  rep.scaling_condition = std::fabs(iq + 3.0 / r - (1.5 - gamma)) <= tol;
  rep.admissible = rep.wave_condition && rep.scaling_condition;
  return rep;
}

}  // namespace rwave
