#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rwave/norms.hpp"
#include "rwave/propagator.hpp"

using namespace rwave;

namespace {

DataPair randomized_sample(const GridPtr& g, std::uint64_t seed) {
  DataPair f = synthesize_data(0.75, 0.3, "powerlaw", g);
  auto rc = sample_coefficients(Distribution::gaussian, seed, g->k_max());
  return randomize(f, rc);
}

double linf_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("snc handles the zero mode") {
  CHECK(snc(0.7, 0.0) == 0.7);
  CHECK(snc(0.7, 2.0) == doctest::Approx(std::sin(1.4) / 2.0).epsilon(1e-15));
}

TEST_CASE("plane wave free evolution is exact") {
  auto g = make_grid(16, 2);
  DataPair f{SpectralField(g), SpectralField(g), 0.75};
  std::size_t slot = g->flat(g->index_of_mode(3), g->index_of_mode(1), 0);
  double r = std::sqrt(std::pow(1.5, 2) + std::pow(0.5, 2));
  f.f1.coef[slot] = cplx(0.4, -0.2);
  f.f2.coef[slot] = cplx(-0.1, 0.7);

  for (double t : {0.0, 0.31, 2.7, 19.5}) {
    SpectralField u = free_evolution(f, t);
    SpectralField ut = free_velocity(f, t);
    cplx eu = std::cos(t * r) * f.f1.coef[slot] + std::sin(t * r) / r * f.f2.coef[slot];
    cplx ev = -r * std::sin(t * r) * f.f1.coef[slot] + std::cos(t * r) * f.f2.coef[slot];
    CHECK(std::abs(u.coef[slot] - eu) < 1e-12);
    CHECK(std::abs(ut.coef[slot] - ev) < 1e-12);
    for (std::size_t i = 0; i < u.coef.size(); ++i)
      if (i != slot) CHECK(std::abs(u.coef[i]) == 0.0);
  }

  // zero mode: u = f1 + t f2
  DataPair z{SpectralField(g), SpectralField(g), 0.75};
  z.f1.coef[0] = 1.0;
  z.f2.coef[0] = 2.0;
  CHECK(std::abs(free_evolution(z, 3.0).coef[0] - cplx(7.0, 0.0)) < 1e-14);
  CHECK(std::abs(free_velocity(z, 3.0).coef[0] - cplx(2.0, 0.0)) < 1e-14);
}

TEST_CASE("linear energy is conserved to rounding over T = 20") {
  auto g = make_grid(16, 2);
  DataPair f = randomized_sample(g, 31);
  const auto& r = g->xi_abs();
  auto energy = [&](const SpectralField& u, const SpectralField& ut) {
    double e = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
      e += r[i] * r[i] * std::norm(u.coef[i]) + std::norm(ut.coef[i]);
    return e;
  };
  SpectralField u0 = free_evolution(f, 0.0);
  SpectralField v0 = free_velocity(f, 0.0);
  double e0 = energy(u0, v0);
  for (double t : {0.5, 7.0, 20.0}) {
    SpectralField u = free_evolution(f, t);
    SpectralField ut = free_velocity(f, t);
    CHECK(std::fabs(energy(u, ut) - e0) / e0 < 1e-12);
  }
}

TEST_CASE("velocity identity: d/dt u equals <grad> applied to the companion") {
  auto g = make_grid(16, 2);
  DataPair f = randomized_sample(g, 77);
  double t = 1.3;

  // exact identity at the multiplier level
  SpectralField ut = free_velocity(f, t);
  SpectralField mod = bessel_potential(modified_evolution(f, t), 1.0);
  CHECK(linf_diff(ut.coef, mod.coef) < 1e-12);

  // central differences of the position converge to it at order >= 1.9
  auto fd_error = [&](double h) {
    SpectralField up = free_evolution(f, t + h);
    SpectralField um = free_evolution(f, t - h);
    double m = 0.0;
    for (std::size_t i = 0; i < up.coef.size(); ++i)
      m = std::max(m, std::abs((up.coef[i] - um.coef[i]) / (2.0 * h) - ut.coef[i]));
    return m;
  };
  double e1 = fd_error(1e-2);
  double e2 = fd_error(5e-3);
  double order = std::log2(e1 / e2);
  CHECK(order > 1.9);
  CHECK(fd_error(1e-3) < 1e-6);
}

TEST_CASE("sampler matches the direct propagators") {
  auto g = make_grid(16, 2);
  DataPair f = randomized_sample(g, 5);
  FreeEvolutionSampler sampler(f);
  for (double t : {0.0, 0.4, 2.0, 0.4}) {  // revisit a cached time
    CHECK(linf_diff(sampler.u(t).coef, free_evolution(f, t).coef) < 1e-14);
    CHECK(linf_diff(sampler.u_t(t).coef, free_velocity(f, t).coef) < 1e-12);
    CHECK(linf_diff(sampler.u_tilde(t).coef, modified_evolution(f, t).coef) < 1e-14);
  }
}

TEST_CASE("duhamel quadrature: constant single-mode forcing") {
  auto g = make_grid(16, 2);
  std::size_t slot = g->flat(g->index_of_mode(4), 0, 0);
  double k = 2.0;  // |xi| = 4/2
  double t = 1.1;

  auto run = [&](int nsamples) {
    std::vector<SpectralField> forcing(nsamples, SpectralField(g, false));
    for (auto& fld : forcing) fld.coef[slot] = 1.0;
    SpectralField d = duhamel(forcing, t);
    double expect = (1.0 - std::cos(k * t)) / (k * k);
    return std::abs(d.coef[slot] - expect);
  };
  double e1 = run(41);
  double e2 = run(81);
  CHECK(std::log2(e1 / e2) > 1.9);
  CHECK(run(641) < 1e-6);

  CHECK_THROWS(duhamel(std::vector<SpectralField>{SpectralField(g)}, 1.0));
}
