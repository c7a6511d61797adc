#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "rwave/norms.hpp"
#include "rwave/randomizer.hpp"
#include "rwave/rng.hpp"

using namespace rwave;

namespace {

double linf_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("philox counter stream basics") {
  auto a = philox4x32({1, 2, 3, 4}, {5, 6});
  auto b = philox4x32({1, 2, 3, 4}, {5, 6});
  auto c = philox4x32({1, 2, 3, 5}, {5, 6});
  CHECK(a == b);
  CHECK(a != c);

  auto u = counter_uniforms(42, 1, 2, 3);
  for (double x : u) {
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
  auto n = counter_normals(42, 1, 2, 3);
  CHECK(std::isfinite(n[0]));
  CHECK(std::isfinite(n[1]));

  // moments of the normal stream
  double mean = 0.0, var = 0.0;
  const int N = 20000;
  for (int i = 0; i < N; ++i) {
    auto v = counter_normals(7, 0, 0, i);
    mean += v[0] + v[1];
    var += v[0] * v[0] + v[1] * v[1];
  }
  mean /= 2 * N;
  var /= 2 * N;
  CHECK(std::fabs(mean) < 0.02);
  CHECK(std::fabs(var - 1.0) < 0.03);
}

TEST_CASE("half lattice splits Z^3") {
  int count = 0;
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -3; z <= 3; ++z) {
        if (x == 0 && y == 0 && z == 0) {
          CHECK(!in_half_lattice(x, y, z));
          continue;
        }
        bool pos = in_half_lattice(x, y, z);
        bool neg = in_half_lattice(-x, -y, -z);
        CHECK(pos != neg);  // exactly one of k, -k
        if (pos) ++count;
      }
  CHECK(count == (7 * 7 * 7 - 1) / 2);
}

TEST_CASE("coefficient ensembles: symmetry, determinism, moments") {
  for (auto dist : {Distribution::gaussian, Distribution::rademacher,
                    Distribution::uniform_compact}) {
    auto rc = sample_coefficients(dist, 99, 3);
    auto rc2 = sample_coefficients(dist, 99, 3);
    CHECK(rc.h == rc2.h);  // determinism
    CHECK(rc.l == rc2.l);
    CHECK(rc.h_at(0, 0, 0).imag() == 0.0);
    CHECK(rc.l_at(0, 0, 0).imag() == 0.0);
    for (int x = -3; x <= 3; ++x)
      for (int y = -3; y <= 3; ++y)
        for (int z = -3; z <= 3; ++z) {
          CHECK(std::abs(rc.h_at(x, y, z) - std::conj(rc.h_at(-x, -y, -z))) == 0.0);
          CHECK(std::abs(rc.l_at(x, y, z) - std::conj(rc.l_at(-x, -y, -z))) == 0.0);
        }
    if (dist == Distribution::rademacher) {
      for (int x = -3; x <= 3; ++x)
        for (int y = -3; y <= 3; ++y)
          for (int z = -3; z <= 3; ++z)
            if (!(x == 0 && y == 0 && z == 0))
              CHECK(std::abs(rc.h_at(x, y, z)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    if (dist == Distribution::uniform_compact) {
      for (const auto& c : rc.h) {
        CHECK(std::fabs(c.real()) <= std::sqrt(3.0) + 1e-12);
        CHECK(std::fabs(c.imag()) <= std::sqrt(1.5) + 1e-12);
      }
    }
  }

  // E|h_k|^2 = 1 across draws
  double acc = 0.0;
  const int draws = 4000;
  for (int i = 0; i < draws; ++i) {
    auto rc = sample_coefficients(Distribution::gaussian, derive_draw_seed(5, i), 1);
    acc += std::norm(rc.h_at(1, 0, 0)) + std::norm(rc.h_at(0, 1, -1)) +
           std::norm(rc.h_at(0, 0, 0));
  }
  CHECK(acc / (3 * draws) == doctest::Approx(1.0).epsilon(0.05));

  // h and l streams are distinct
  auto rc = sample_coefficients(Distribution::gaussian, 99, 3);
  CHECK(std::abs(rc.h_at(1, 2, 3) - rc.l_at(1, 2, 3)) > 1e-12);

  // distinct derived seeds
  CHECK(derive_draw_seed(5, 0) != derive_draw_seed(5, 1));
  CHECK(derive_draw_seed(5, 0) != derive_draw_seed(6, 0));
}

TEST_CASE("synthesized data profiles") {
  auto g = make_grid(16, 2);
  for (const char* profile : {"powerlaw", "bump"}) {
    DataPair f = synthesize_data(0.75, 0.1, profile, g);
    CHECK(f.s == 0.75);
    CHECK(f.f1.is_real);
    CHECK(f.f1.max_hermitian_defect() < 1e-13);
    CHECK(f.f2.max_hermitian_defect() < 1e-13);
    CHECK(sobolev_norm(f.f1, 0.75) > 0.0);
    // support stays inside the resolved band |xi|_inf <= k_max
    for (std::size_t i = 0; i < f.f1.coef.size(); ++i) {
      auto xi = g->xi(i);
      double m = std::max({std::fabs(xi[0]), std::fabs(xi[1]), std::fabs(xi[2])});
      if (m > g->k_max() + 1e-12) CHECK(std::abs(f.f1.coef[i]) == 0.0);
    }
  }
  CHECK_THROWS(synthesize_data(1.5, 0.1, "powerlaw", g));
  CHECK_THROWS(synthesize_data(0.75, 0.1, "nope", g));

  // powerlaw magnitude follows <xi>^{-s-3/2-eps0}
  DataPair f = synthesize_data(0.5, 1.0, "powerlaw", g);
  auto at = [&](int mx, int my, int mz) {
    return std::abs(f.f1.coef[g->flat(g->index_of_mode(mx), g->index_of_mode(my),
                                      g->index_of_mode(mz))]);
  };
  double xi_a = std::pow(4.0 / 2.0, 2), xi_b = std::pow(2.0 / 2.0, 2);
  CHECK(at(4, 0, 0) / at(2, 0, 0) ==
        doctest::Approx(std::pow((1.0 + xi_a) / (1.0 + xi_b),
                                 0.5 * -(0.5 + 1.5 + 0.05)))
            .epsilon(1e-12));
  // mean-zero data: the non-dispersive zero mode carries no mass
  CHECK(at(0, 0, 0) == 0.0);
  CHECK(std::abs(f.f2.coef[g->flat(0, 0, 0)]) == 0.0);
}

TEST_CASE("randomization: reconstruction, reality, oracle agreement") {
  auto g = make_grid(16, 2);
  DataPair f = synthesize_data(0.75, 0.3, "powerlaw", g);

  // all-ones coefficients reconstruct the data (partition of unity)
  RandomCoefficients ones;
  ones.k_max = g->k_max();
  std::size_t count = static_cast<std::size_t>(ones.side()) * ones.side() * ones.side();
  ones.h.assign(count, cplx(1.0, 0.0));
  ones.l.assign(count, cplx(1.0, 0.0));
  DataPair rec = randomize(f, ones);
  CHECK(linf_diff(rec.f1.coef, f.f1.coef) < 1e-12);
  CHECK(linf_diff(rec.f2.coef, f.f2.coef) < 1e-12);

  for (int i = 0; i < 20; ++i) {
    auto rc = sample_coefficients(Distribution::gaussian, derive_draw_seed(17, i),
                                  g->k_max());
    DataPair dom = randomize(f, rc);
    CHECK(dom.f1.max_hermitian_defect() < 1e-11);  // real data stays real
    CHECK(dom.f2.max_hermitian_defect() < 1e-11);
    DataPair oracle = expand_real_part(f, rc);
    CHECK(linf_diff(dom.f1.coef, oracle.f1.coef) < 1e-11);
    CHECK(linf_diff(dom.f2.coef, oracle.f2.coef) < 1e-11);
  }

  // data beyond the retained cells is refused
  SpectralField wide(g, false);
  wide.coef[g->flat(g->n() / 2, 0, 0)] = 1.0;  // |xi| = n/(2M), outside cell range
  DataPair bad{wide, SpectralField(g, true), 0.75};
  auto rc = sample_coefficients(Distribution::gaussian, 3, g->k_max());
  CHECK_THROWS_AS(randomize(bad, rc), std::out_of_range);
}

TEST_CASE("coefficient sidecar round trip") {
  auto rc = sample_coefficients(Distribution::uniform_compact, 0xabcdef1234ull, 4);
  auto path = std::filesystem::temp_directory_path() / "rwave_test_coeffs.rwcf";
  write_coefficients(path.string(), rc);
  auto back = read_coefficients(path.string());
  CHECK(back.k_max == rc.k_max);
  CHECK(back.seed == rc.seed);
  CHECK(back.dist == rc.dist);
  CHECK(back.h == rc.h);  // bit-exact
  CHECK(back.l == rc.l);
  std::filesystem::remove(path);

  CHECK_THROWS(read_coefficients("/nonexistent/path.rwcf"));
}
