#include "rwave/randomizer.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "rwave/partition.hpp"
#include "rwave/rng.hpp"

namespace rwave {

namespace {

constexpr double kEps0 = 0.05;  // regularity margin of the synthesized profiles
constexpr char kMagic[4] = {'R', 'W', 'C', 'F'};
constexpr std::uint32_t kSidecarVersion = 1;

// Two variance-one variates for lattice point k and stream tag (0: h, 1: l).
std::array<double, 2> draw_pair(Distribution dist, std::uint64_t seed, int kx, int ky,
                                int kz, std::uint32_t stream) {
  std::uint32_t a = ((static_cast<std::uint32_t>(kx + 512) & 0xffffu) << 16) |
                    (static_cast<std::uint32_t>(ky + 512) & 0xffffu);
  std::uint32_t b = ((static_cast<std::uint32_t>(kz + 512) & 0xffffu) << 16) | stream;
  switch (dist) {
    case Distribution::gaussian:
      return counter_normals(seed, a, b, 0);
    case Distribution::rademacher: {
      auto u = counter_uniforms(seed, a, b, 0);
      return {u[0] < 0.5 ? -1.0 : 1.0, u[1] < 0.5 ? -1.0 : 1.0};
    }
    case Distribution::uniform_compact: {
      auto u = counter_uniforms(seed, a, b, 0);
      double w = std::sqrt(3.0);
      return {(2.0 * u[0] - 1.0) * w, (2.0 * u[1] - 1.0) * w};
    }
  }
  throw std::invalid_argument("sample_coefficients: unsupported distribution");
}

}  // namespace

Distribution distribution_from_string(const std::string& name) {
  if (name == "gaussian") return Distribution::gaussian;
  if (name == "rademacher") return Distribution::rademacher;
  if (name == "uniform_compact") return Distribution::uniform_compact;
  throw std::invalid_argument("unsupported distribution: " + name);
}

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::gaussian: return "gaussian";
    case Distribution::rademacher: return "rademacher";
    case Distribution::uniform_compact: return "uniform_compact";
  }
  return "?";
}

bool in_half_lattice(int kx, int ky, int kz) {
  if (kx != 0) return kx > 0;
  if (ky != 0) return ky > 0;
  return kz > 0;
}

RandomCoefficients sample_coefficients(Distribution dist, std::uint64_t seed, int k_max) {
  if (k_max < 0 || k_max > 500)
    throw std::invalid_argument("sample_coefficients: k_max out of range");
  RandomCoefficients rc;
  rc.k_max = k_max;
  rc.seed = seed;
  rc.dist = dist;
  std::size_t count = static_cast<std::size_t>(rc.side()) * rc.side() * rc.side();
  rc.h.resize(count);
  rc.l.resize(count);
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int kx = -k_max; kx <= k_max; ++kx) {
    for (int ky = -k_max; ky <= k_max; ++ky) {
      for (int kz = -k_max; kz <= k_max; ++kz) {
        if (kx == 0 && ky == 0 && kz == 0) {
          rc.h[rc.index(0, 0, 0)] = draw_pair(dist, seed, 0, 0, 0, 0)[0];
          rc.l[rc.index(0, 0, 0)] = draw_pair(dist, seed, 0, 0, 0, 1)[0];
          continue;
        }
        if (!in_half_lattice(kx, ky, kz)) continue;
        auto gh = draw_pair(dist, seed, kx, ky, kz, 0);
        auto gl = draw_pair(dist, seed, kx, ky, kz, 1);
        cplx h(gh[0] * inv_sqrt2, gh[1] * inv_sqrt2);
        cplx l(gl[0] * inv_sqrt2, gl[1] * inv_sqrt2);
        rc.h[rc.index(kx, ky, kz)] = h;
        rc.l[rc.index(kx, ky, kz)] = l;
        rc.h[rc.index(-kx, -ky, -kz)] = std::conj(h);
        rc.l[rc.index(-kx, -ky, -kz)] = std::conj(l);
      }
    }
  }
  return rc;
}

std::uint64_t derive_draw_seed(std::uint64_t base_seed, std::uint64_t draw_index) {
  auto r = philox4x32({static_cast<std::uint32_t>(draw_index),
                       static_cast<std::uint32_t>(draw_index >> 32), 0x5eedu, 0},
                      {static_cast<std::uint32_t>(base_seed),
                       static_cast<std::uint32_t>(base_seed >> 32)});
  return (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
}

DataPair randomize(const DataPair& f, const RandomCoefficients& coeffs) {
  const Grid& g = *f.f1.grid;
  const PartitionTable& table = PartitionTable::for_grid(f.f1.grid);
  DataPair out{SpectralField(f.f1.grid, f.f1.is_real), SpectralField(f.f2.grid, f.f2.is_real),
               f.s};
  for (std::size_t i = 0; i < g.size(); ++i) {
    cplx c1 = f.f1.coef[i];
    cplx c2 = f.f2.coef[i];
    if (c1 == 0.0 && c2 == 0.0) continue;
    cplx m1(0.0, 0.0), m2(0.0, 0.0);
    for (const auto* e = table.begin(i); e != table.end(i); ++e) {
      if (std::abs(static_cast<int>(e->kx)) > coeffs.k_max ||
          std::abs(static_cast<int>(e->ky)) > coeffs.k_max ||
          std::abs(static_cast<int>(e->kz)) > coeffs.k_max)
        throw std::out_of_range("randomize: data support escapes coefficient range");
      m1 += e->w * coeffs.h_at(e->kx, e->ky, e->kz);
      m2 += e->w * coeffs.l_at(e->kx, e->ky, e->kz);
    }
    out.f1.coef[i] = m1 * c1;
    out.f2.coef[i] = m2 * c2;
  }
  return out;
}

DataPair expand_real_part(const DataPair& f, const RandomCoefficients& coeffs) {
  const Grid& g = *f.f1.grid;
  DataPair out{SpectralField(f.f1.grid, f.f1.is_real), SpectralField(f.f2.grid, f.f2.is_real),
               f.s};
  // Assembled from the half-lattice generators only: the conjugate cells are
  // never read, which makes this an independent bookkeeping route.
  const PartitionTable& table = PartitionTable::for_grid(f.f1.grid);
  for (std::size_t i = 0; i < g.size(); ++i) {
    cplx c1 = f.f1.coef[i];
    cplx c2 = f.f2.coef[i];
    if (c1 == 0.0 && c2 == 0.0) continue;
    cplx m1(0.0, 0.0), m2(0.0, 0.0);
    for (const auto* e = table.begin(i); e != table.end(i); ++e) {
      int kx = e->kx, ky = e->ky, kz = e->kz;
      double w = e->w;
      if (std::abs(kx) > coeffs.k_max || std::abs(ky) > coeffs.k_max ||
          std::abs(kz) > coeffs.k_max)
        throw std::out_of_range("expand_real_part: data support escapes coefficient range");
      if (kx == 0 && ky == 0 && kz == 0) {
        m1 += w * coeffs.h_at(0, 0, 0).real();
        m2 += w * coeffs.l_at(0, 0, 0).real();
      } else if (in_half_lattice(kx, ky, kz)) {
        cplx h = coeffs.h_at(kx, ky, kz);
        cplx l = coeffs.l_at(kx, ky, kz);
        m1 += cplx(h.real() * w, h.imag() * w);
        m2 += cplx(l.real() * w, l.imag() * w);
      } else {
        cplx h = coeffs.h_at(-kx, -ky, -kz);
        cplx l = coeffs.l_at(-kx, -ky, -kz);
        m1 += cplx(h.real() * w, -h.imag() * w);
        m2 += cplx(l.real() * w, -l.imag() * w);
      }
    }
    out.f1.coef[i] = m1 * c1;
    out.f2.coef[i] = m2 * c2;
  }
  return out;
}

DataPair synthesize_data(double s, double amplitude, const std::string& profile,
                         const GridPtr& grid) {
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("synthesize_data: s must lie in (0, 1)");
  bool powerlaw;
  if (profile == "powerlaw") {
    powerlaw = true;
  } else if (profile == "bump") {
    powerlaw = false;
  } else {
    throw std::invalid_argument("synthesize_data: unknown profile " + profile);
  }
  const Grid& g = *grid;
  DataPair out{SpectralField(grid, true), SpectralField(grid, true), s};
  int m_bound = g.box_multiple() * g.k_max();
  double e1 = -(s + 1.5 + kEps0);
  double e2 = -((s - 1.0) + 1.5 + kEps0);
  for (int ix = 0; ix < g.n(); ++ix) {
    int mx = g.mode(ix);
    if (std::abs(mx) > m_bound) continue;
    for (int iy = 0; iy < g.n(); ++iy) {
      int my = g.mode(iy);
      if (std::abs(my) > m_bound) continue;
      for (int iz = 0; iz < g.n(); ++iz) {
        int mz = g.mode(iz);
        if (std::abs(mz) > m_bound) continue;
        // Mean-zero data: at xi = 0 the wave group has no dispersion (the
        // sin(t|xi|)/|xi| multiplier degenerates to t), so a nonzero spatial
        // mean of f2 would inject secular linear growth into the free
        // evolution that the whole-space problem this box approximates does
        // not have. The zero mode is left empty.
        if (mx == 0 && my == 0 && mz == 0) continue;
        std::size_t i = g.flat(ix, iy, iz);
        auto xi = g.xi(i);
        double jap = 1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        double mag1, mag2;
        if (powerlaw) {
          mag1 = amplitude * std::pow(jap, 0.5 * e1);
          mag2 = amplitude * std::pow(jap, 0.5 * e2);
        } else {
          double decay = std::exp(-(jap - 1.0));
          mag1 = amplitude * decay;
          mag2 = amplitude * decay;
        }
        // Odd-in-xi phase keeps the Hermitian symmetry of real data.
        double theta = 0.9 * std::sin(1.3 * xi[0]) + 0.6 * std::sin(0.7 * xi[1]) +
                       0.3 * std::sin(0.4 * xi[2]);
        cplx phase(std::cos(theta), std::sin(theta));
        out.f1.coef[i] = mag1 * phase;
        out.f2.coef[i] = mag2 * phase;
      }
    }
  }
  return out;
}

void write_coefficients(const std::string& path, const RandomCoefficients& coeffs) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_coefficients: cannot open " + path);
  os.write(kMagic, 4);
  auto put_u32 = [&os](std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); };
  auto put_u64 = [&os](std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); };
  put_u32(kSidecarVersion);
  put_u32(static_cast<std::uint32_t>(coeffs.k_max));
  put_u32(static_cast<std::uint32_t>(coeffs.dist));
  put_u64(coeffs.seed);
  for (std::size_t i = 0; i < coeffs.h.size(); ++i) {
    double quad[4] = {coeffs.h[i].real(), coeffs.h[i].imag(), coeffs.l[i].real(),
                      coeffs.l[i].imag()};
    os.write(reinterpret_cast<const char*>(quad), sizeof(quad));
  }
  if (!os) throw std::runtime_error("write_coefficients: short write to " + path);
}

RandomCoefficients read_coefficients(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_coefficients: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("read_coefficients: bad magic in " + path);
  auto get_u32 = [&is]() { std::uint32_t v; is.read(reinterpret_cast<char*>(&v), 4); return v; };
  auto get_u64 = [&is]() { std::uint64_t v; is.read(reinterpret_cast<char*>(&v), 8); return v; };
  std::uint32_t version = get_u32();
  if (version != kSidecarVersion)
    throw std::runtime_error("read_coefficients: unsupported version");
  RandomCoefficients rc;
  rc.k_max = static_cast<int>(get_u32());
  rc.dist = static_cast<Distribution>(get_u32());
  rc.seed = get_u64();
  std::size_t count = static_cast<std::size_t>(rc.side()) * rc.side() * rc.side();
  rc.h.resize(count);
  rc.l.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    double quad[4];
    is.read(reinterpret_cast<char*>(quad), sizeof(quad));
    rc.h[i] = cplx(quad[0], quad[1]);
    rc.l[i] = cplx(quad[2], quad[3]);
  }
  if (!is) throw std::runtime_error("read_coefficients: truncated file " + path);
  return rc;
}

}  // namespace rwave
