#pragma once

#include "rwave/norms.hpp"
#include "rwave/randomizer.hpp"

namespace rwave {

struct WilsonInterval {
  double lo = 0.0, hi = 0.0;
};

// 95% by default (z = 1.96); well behaved at small exceedance counts.
WilsonInterval wilson_interval(long successes, long n, double z = 1.96);

struct SubgaussianFit {
  double C_fit = 0.0, c_fit = 0.0, r_squared = 0.0;
  bool pass = false;  // c_fit > 0 and R^2 > 0.9
};

// Weighted least squares of log p on lambda^2 (model p = C exp(-c lambda^2)),
// weights n p / (1 - p); zero-count bins excluded. Needs >= 3 usable bins.
SubgaussianFit fit_subgaussian(const std::vector<double>& lambda,
                               const std::vector<double>& p_hat,
                               const std::vector<long>& counts, long n_samples);

// Geometric 12-point grid spanning [median, median + 5 IQR] of the draws.
std::vector<double> lambda_policy_grid(const std::vector<double>& draw_values,
                                       int n_points = 12);

struct TailEstimate {
  std::vector<double> lambda, p_hat, ci_lo, ci_hi;
  std::vector<long> counts;
  long n_samples = 0;
  SubgaussianFit fit;
  double ref_norm = 0.0;           // data norm the tails are measured against
  double truncation_weight = 0.0;  // discarded-time-tail weight bound
  std::vector<double> draw_values; // per-draw statistic, draw-index order
  std::vector<double> moment_ratios;  // |S|_{L^p_w} / (sqrt(p) |c|_l2), p = 2,4,8,16
};

// Empirical tails of |sum_n c_n h_n| over real unit-variance generators h_n
// (gaussian, +-1, or uniform[-sqrt3, sqrt3]); also the moment-growth ratios.
TailEstimate khinchin_tail(const std::vector<cplx>& c_vec, Distribution dist,
                           const std::vector<double>& lambda_grid, long n_samples,
                           std::uint64_t seed);

struct CampaignSpec {
  Distribution dist = Distribution::gaussian;
  char evolution = 'u';   // 'u' = free evolution, 'm' = the modified companion
  double sigma_w = 0.0;   // Sobolev weight <grad>^{sigma_w} inside the norm
  MixedNormSpec norm;     // q, r, delta weight, horizon T
  long n_samples = 2000;
  std::uint64_t seed = 0;
  int time_samples = 0;   // 0: pick so the time step is about 0.25
  double amplitude_scale = 1.0;  // data scaled before each draw (shared seeds)
};

// Monte Carlo tails of the weighted space-time norm of the randomized free
// evolution. Throws when the hypothesis window of the spec is violated.
TailEstimate strichartz_tail_campaign(const DataPair& f, const CampaignSpec& spec,
                                      const std::vector<double>& lambda_grid = {});

}  // namespace rwave
