#pragma once

#include "rwave/randomizer.hpp"

namespace rwave {

// sin(t r)/r with the removable singularity filled by its analytic limit t.
inline double snc(double t, double r) { return r == 0.0 ? t : std::sin(t * r) / r; }

// Exact-in-Fourier half-wave propagators applied to a data pair.
//   free_evolution:    cos(t|D|) f1 + snc(t,|D|) f2
//   free_velocity:     -|D| sin(t|D|) f1 + cos(t|D|) f2
//   modified_evolution: -(|D|/<D>) sin(t|D|) f1 + (cos(t|D|)/<D>) f2
// (modified_evolution satisfies d/dt free_evolution = <D> modified_evolution).
SpectralField free_evolution(const DataPair& data, double t);
SpectralField free_velocity(const DataPair& data, double t);
SpectralField modified_evolution(const DataPair& data, double t);

// Caches the trig multiplier tables of the last requested time, so the usual
// access pattern (several fields at the same t, then the next t) costs one
// table build per time. One sampler per thread; not shared.
class FreeEvolutionSampler {
 public:
  explicit FreeEvolutionSampler(DataPair data);

  const DataPair& data() const { return data_; }
  SpectralField u(double t);
  SpectralField u_t(double t);
  SpectralField u_tilde(double t);

 private:
  void refresh(double t);
  DataPair data_;
  double cached_t_;
  bool has_cache_ = false;
  std::vector<double> cos_t_, snc_t_;
};

// Duhamel integral int_0^t snc(t-s,|D|) F(s) ds by composite trapezoid over
// uniformly sampled forcing fields on [0, t].
SpectralField duhamel(const std::vector<SpectralField>& forcing, double t);

}  // namespace rwave
