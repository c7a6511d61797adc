#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rwave/deviation.hpp"

using namespace rwave;

TEST_CASE("wilson interval sanity") {
  WilsonInterval ci = wilson_interval(50, 100);
  CHECK(ci.lo < 0.5);
  CHECK(ci.hi > 0.5);
  CHECK(ci.lo > 0.39);
  CHECK(ci.hi < 0.61);

  WilsonInterval zero = wilson_interval(0, 100);
  CHECK(zero.lo == 0.0);
  CHECK(zero.hi > 0.0);  // never collapses at zero counts
  CHECK(zero.hi < 0.05);

  WilsonInterval full = wilson_interval(100, 100);
  CHECK(full.hi <= 1.0);
  CHECK(full.hi > 0.99);
  CHECK(full.lo < 1.0);
  CHECK(full.lo > 0.9);

  CHECK_THROWS(wilson_interval(0, 0));
}

TEST_CASE("subgaussian fit recovers exact exponential tails") {
  std::vector<double> lambda = {0.5, 1.0, 1.5, 2.0, 2.5};
  std::vector<double> p_hat;
  std::vector<long> counts;
  for (double l : lambda) {
    p_hat.push_back(std::exp(-2.0 * l * l));
    counts.push_back(1);
  }
  SubgaussianFit fit = fit_subgaussian(lambda, p_hat, counts, 1000);
  CHECK(fit.c_fit == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.C_fit == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.pass);
}

TEST_CASE("subgaussian fit rejects non-decaying tails") {
  // growing exceedance probability: negative c_fit, verdict fails
  std::vector<double> lambda = {0.5, 1.0, 1.5, 2.0};
  std::vector<double> p_hat;
  std::vector<long> counts;
  for (double l : lambda) {
    p_hat.push_back(0.01 * std::exp(0.5 * l * l));
    counts.push_back(10);
  }
  SubgaussianFit fit = fit_subgaussian(lambda, p_hat, counts, 1000);
  CHECK(fit.c_fit < 0.0);
  CHECK(!fit.pass);

  // flat tails: zero slope, no decay to certify
  std::vector<double> flat = {0.3, 0.3, 0.3, 0.3};
  SubgaussianFit f2 = fit_subgaussian(lambda, flat, counts, 1000);
  CHECK(f2.c_fit == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(!f2.pass);

  // fewer than 3 populated bins
  std::vector<long> sparse = {5, 0, 0, 5};
  CHECK_THROWS(fit_subgaussian(lambda, p_hat, sparse, 1000));
}

TEST_CASE("lambda grid policy") {
  std::vector<double> v(100);
  for (int i = 0; i < 100; ++i) v[i] = i + 1.0;
  std::vector<double> grid = lambda_policy_grid(v);
  REQUIRE(grid.size() == 12);
  CHECK(grid.front() == doctest::Approx(50.5).epsilon(1e-12));
  CHECK(grid.back() == doctest::Approx(50.5 + 5.0 * 49.5).epsilon(1e-12));
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  // geometric spacing: constant ratio
  double ratio = grid[1] / grid[0];
  for (std::size_t i = 2; i < grid.size(); ++i)
    CHECK(grid[i] / grid[i - 1] == doctest::Approx(ratio).epsilon(1e-10));

  CHECK(lambda_policy_grid({}).empty());
  CHECK(lambda_policy_grid(std::vector<double>(10, 3.0)).empty());  // zero IQR
}

TEST_CASE("khinchin: rademacher with a single unit coefficient") {
  std::vector<cplx> c = {cplx(1.0, 0.0)};
  TailEstimate est = khinchin_tail(c, Distribution::rademacher, {0.5, 0.9, 1.1}, 500, 4);
  CHECK(est.ref_norm == doctest::Approx(1.0));
  // |S| = 1 always: full exceedance below 1, none above
  CHECK(est.counts[0] == 500);
  CHECK(est.counts[1] == 500);
  CHECK(est.counts[2] == 0);
  CHECK(!est.fit.pass);  // a step is not subgaussian decay across these bins

  CHECK_THROWS(khinchin_tail({}, Distribution::gaussian, {1.0}, 10, 1));
}

TEST_CASE("khinchin: gaussian tails match 2Q(lambda) within Wilson") {
  std::vector<cplx> c = {cplx(1.0, 0.0)};
  std::vector<double> grid = {1.0, 2.0, 3.0};
  TailEstimate est = khinchin_tail(c, Distribution::gaussian, grid, 10000, 11);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double exact = std::erfc(grid[i] / std::sqrt(2.0));  // P(|g| > lambda)
    CHECK(est.ci_lo[i] <= exact);
    CHECK(exact <= est.ci_hi[i]);
  }
}

TEST_CASE("khinchin: moment ratios stay of order one") {
  std::vector<cplx> c;
  for (int j = 0; j < 16; ++j) c.push_back(cplx(0.25, 0.0));
  for (auto dist : {Distribution::gaussian, Distribution::rademacher,
                    Distribution::uniform_compact}) {
    TailEstimate est = khinchin_tail(c, dist, {0.5, 1.0, 1.5, 2.0}, 4000, 21);
    REQUIRE(est.moment_ratios.size() == 4);
    for (double r : est.moment_ratios) {
      CHECK(r > 0.1);
      CHECK(r < 1.5);
    }
    double lo = *std::min_element(est.moment_ratios.begin(), est.moment_ratios.end());
    double hi = *std::max_element(est.moment_ratios.begin(), est.moment_ratios.end());
    CHECK(hi / lo < 2.0);  // sqrt(p) is the right moment growth rate
  }

  // determinism: the same seed reproduces every draw bitwise
  TailEstimate a = khinchin_tail(c, Distribution::gaussian, {1.0, 2.0, 3.0}, 200, 33);
  TailEstimate b = khinchin_tail(c, Distribution::gaussian, {1.0, 2.0, 3.0}, 200, 33);
  CHECK(a.draw_values == b.draw_values);
}

TEST_CASE("campaign hypothesis window") {
  auto g = make_grid(8, 2);
  DataPair f = synthesize_data(0.75, 0.1, "powerlaw", g);

  CampaignSpec spec;
  spec.norm = MixedNormSpec{4.0, 4.0, 1.0, 2.0};  // delta <= 1 + 1/q
  spec.n_samples = 2;
  CHECK_THROWS(strichartz_tail_campaign(f, spec));

  spec.norm = MixedNormSpec{kInf, 4.0, 0.9, 2.0};  // q = inf needs delta > 1
  CHECK_THROWS(strichartz_tail_campaign(f, spec));

  spec.norm = MixedNormSpec{4.0, kInf, 1.3, 2.0};
  spec.sigma_w = 1.0;  // exceeds the data regularity s = 0.75
  CHECK_THROWS(strichartz_tail_campaign(f, spec));
}

TEST_CASE("campaign: truncation weights and basic output") {
  auto g = make_grid(8, 2);
  DataPair f = synthesize_data(0.75, 0.3, "powerlaw", g);

  CampaignSpec spec;
  spec.norm = MixedNormSpec{4.0, 4.0, 1.3, 2.0};
  spec.n_samples = 40;
  spec.seed = 5;
  spec.time_samples = 8;
  TailEstimate est = strichartz_tail_campaign(f, spec);
  CHECK(est.draw_values.size() == 40);
  for (double v : est.draw_values) {
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
  double dq = spec.norm.delta * spec.norm.q;
  CHECK(est.truncation_weight ==
        doctest::Approx(std::pow(2.0, 1.0 - dq) / (dq - 1.0)).epsilon(1e-12));

  CampaignSpec sup = spec;
  sup.norm.q = kInf;
  sup.norm.delta = 1.1;
  TailEstimate est2 = strichartz_tail_campaign(f, sup);
  CHECK(est2.truncation_weight ==
        doctest::Approx(std::pow(5.0, -0.55)).epsilon(1e-12));
}

TEST_CASE("campaign homogeneity: doubled data doubles every draw") {
  auto g = make_grid(8, 2);
  DataPair f = synthesize_data(0.75, 0.2, "powerlaw", g);

  CampaignSpec spec;
  spec.norm = MixedNormSpec{4.0, 4.0, 1.3, 2.0};
  spec.n_samples = 30;
  spec.seed = 9;
  spec.time_samples = 8;
  TailEstimate one = strichartz_tail_campaign(f, spec);

  CampaignSpec twice = spec;
  twice.amplitude_scale = 2.0;
  TailEstimate two = strichartz_tail_campaign(f, twice);

  REQUIRE(one.draw_values.size() == two.draw_values.size());
  for (std::size_t i = 0; i < one.draw_values.size(); ++i)
    CHECK(two.draw_values[i] ==
          doctest::Approx(2.0 * one.draw_values[i]).epsilon(1e-12));
  CHECK(two.ref_norm == doctest::Approx(2.0 * one.ref_norm).epsilon(1e-12));

  // exceedance counts on the scaled grid match bin for bin
  std::vector<double> grid = lambda_policy_grid(one.draw_values);
  std::vector<double> grid2 = grid;
  for (double& x : grid2) x *= 2.0;
  TailEstimate ca = strichartz_tail_campaign(f, spec, grid);
  TailEstimate cb = strichartz_tail_campaign(f, twice, grid2);
  CHECK(ca.counts == cb.counts);
}
