#include "rwave/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwave/kernels.hpp"
#include "rwave/propagator.hpp"
#include "rwave/rng.hpp"

namespace rwave {

WilsonInterval wilson_interval(long successes, long n, double z) {
  if (n <= 0) throw std::invalid_argument("wilson_interval: n must be positive");
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

SubgaussianFit fit_subgaussian(const std::vector<double>& lambda,
                               const std::vector<double>& p_hat,
                               const std::vector<long>& counts, long n_samples) {
  std::vector<double> x, y, w;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (counts[i] <= 0) continue;
    x.push_back(lambda[i] * lambda[i]);
    y.push_back(std::log(p_hat[i]));
    w.push_back(n_samples * p_hat[i] / std::max(1.0 - p_hat[i], 1.0 / n_samples));
  }
  if (x.size() < 3)
    throw std::invalid_argument("fit_subgaussian: need >= 3 nonzero-count bins");
  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  double det = sw * sxx - sx * sx;
  if (det <= 0.0) throw std::invalid_argument("fit_subgaussian: degenerate abscissae");
  double slope = (sw * sxy - sx * sy) / det;
  double intercept = (sy - slope * sx) / sw;
  double ss_res = 0.0, ss_tot = 0.0, ybar = sy / sw;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double fit = intercept + slope * x[i];
    ss_res += w[i] * (y[i] - fit) * (y[i] - fit);
    ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
  }
  SubgaussianFit out;
  out.C_fit = std::exp(intercept);
  out.c_fit = -slope;
  out.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  out.pass = out.c_fit > 0.0 && out.r_squared > 0.9;
  return out;
}

std::vector<double> lambda_policy_grid(const std::vector<double>& draw_values,
                                       int n_points) {
  if (draw_values.empty()) return {};
  std::vector<double> v = draw_values;
  std::sort(v.begin(), v.end());
  auto quantile = [&v](double q) {
    double idx = q * (v.size() - 1);
    std::size_t i = static_cast<std::size_t>(idx);
    double frac = idx - i;
    return i + 1 < v.size() ? v[i] * (1.0 - frac) + v[i + 1] * frac : v[i];
  };
  double med = quantile(0.5);
  double iqr = quantile(0.75) - quantile(0.25);
  double lo = med, hi = med + 5.0 * iqr;
  if (!(lo > 0.0) || !(hi > lo)) return {};
  std::vector<double> grid(n_points);
  for (int i = 0; i < n_points; ++i)
    grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n_points - 1));
  return grid;
}

namespace {

double real_generator(Distribution dist, std::uint64_t seed, std::uint32_t a,
                      std::uint32_t b, std::uint64_t c) {
  switch (dist) {
    case Distribution::gaussian:
      return counter_normals(seed, a, b, c)[0];
    case Distribution::rademacher:
      return counter_uniforms(seed, a, b, c)[0] < 0.5 ? -1.0 : 1.0;
    default:
      return (2.0 * counter_uniforms(seed, a, b, c)[0] - 1.0) * std::sqrt(3.0);
  }
}

void finalize_tails(TailEstimate& est, const std::vector<double>& lambda_grid) {
  est.lambda = lambda_grid.empty() ? lambda_policy_grid(est.draw_values) : lambda_grid;
  long n = est.n_samples;
  for (double lam : est.lambda) {
    long k = static_cast<long>(
        std::count_if(est.draw_values.begin(), est.draw_values.end(),
                      [lam](double v) { return v > lam; }));
    est.counts.push_back(k);
    est.p_hat.push_back(static_cast<double>(k) / n);
    WilsonInterval ci = wilson_interval(k, n);
    est.ci_lo.push_back(ci.lo);
    est.ci_hi.push_back(ci.hi);
  }
  try {
    est.fit = fit_subgaussian(est.lambda, est.p_hat, est.counts, n);
  } catch (const std::invalid_argument&) {
    est.fit = SubgaussianFit{};  // too few populated bins; verdict stays fail
  }
}

}  // namespace

TailEstimate khinchin_tail(const std::vector<cplx>& c_vec, Distribution dist,
                           const std::vector<double>& lambda_grid, long n_samples,
                           std::uint64_t seed) {
  double l2 = 0.0;
  for (const auto& c : c_vec) l2 += std::norm(c);
  if (!(l2 > 0.0)) throw std::invalid_argument("khinchin_tail: degenerate coefficients");

  TailEstimate est;
  est.n_samples = n_samples;
  est.ref_norm = std::sqrt(l2);
  est.draw_values.resize(n_samples);
  std::vector<double> moments(4, 0.0);  // |S|^p for p = 2, 4, 8, 16
  for (long i = 0; i < n_samples; ++i) {
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < c_vec.size(); ++j)
      s += c_vec[j] * real_generator(dist, seed, static_cast<std::uint32_t>(j), 1u,
                                     static_cast<std::uint64_t>(i));
    double a2 = std::norm(s);
    est.draw_values[i] = std::sqrt(a2);
    double a4 = a2 * a2, a8 = a4 * a4;
    moments[0] += a2;
    moments[1] += a4;
    moments[2] += a8;
    moments[3] += a8 * a8;
  }
  double ps[4] = {2.0, 4.0, 8.0, 16.0};
  for (int k = 0; k < 4; ++k) {
    double lp = std::pow(moments[k] / n_samples, 1.0 / ps[k]);
    est.moment_ratios.push_back(lp / (std::sqrt(ps[k]) * est.ref_norm));
  }
  finalize_tails(est, lambda_grid);
  return est;
}

TailEstimate strichartz_tail_campaign(const DataPair& f, const CampaignSpec& spec,
                                      const std::vector<double>& lambda_grid) {
  const double q = spec.norm.q, r = spec.norm.r, delta = spec.norm.delta;
  if (q != kInf && !(delta > 1.0 + 1.0 / q))
    throw std::invalid_argument("Lemma 2.6 requires delta > 1 + 1/q for finite q");
  if (q == kInf && !(delta > 1.0))
    throw std::invalid_argument("Lemma 2.8 requires delta > 1 when q is infinite");
  if ((r == kInf || spec.sigma_w > 0.0) && !(spec.sigma_w <= f.s && f.s > 0.0))
    throw std::invalid_argument(
        "Cor. 2.7 requires regularity headroom 0 < sigma_w <= s on the data");

  const GridPtr& grid = f.f1.grid;
  const auto& xr = grid->xi_abs();
  const std::size_t N = grid->size();
  int nt = spec.time_samples > 0
               ? spec.time_samples
               : std::max(2, static_cast<int>(std::llround(spec.norm.T / 0.25)));
  double h = spec.norm.T / nt;

  std::vector<double> cds(N), sds(N);
  for (std::size_t i = 0; i < N; ++i) {
    cds[i] = std::cos(h * xr[i]);
    sds[i] = snc(h, xr[i]);
  }
  std::vector<double> weight;
  if (spec.sigma_w > 0.0) {
    weight.resize(N);
    for (std::size_t i = 0; i < N; ++i)
      weight[i] = std::pow(1.0 + xr[i] * xr[i], 0.5 * spec.sigma_w);
  }

  DataPair data = f;
  if (spec.amplitude_scale != 1.0) {
    data.f1 *= spec.amplitude_scale;
    data.f2 *= spec.amplitude_scale;
  }

  TailEstimate est;
  est.n_samples = spec.n_samples;
  double headroom = (r == kInf || spec.sigma_w > 0.0) ? spec.sigma_w : 0.0;
  est.ref_norm = pair_sobolev_norm(data.f1, data.f2, headroom);
  if (q != kInf)
    est.truncation_weight = std::pow(spec.norm.T, 1.0 - delta * q) / (delta * q - 1.0);
  else
    est.truncation_weight = std::pow(1.0 + spec.norm.T * spec.norm.T, -0.5 * delta);
  est.draw_values.resize(spec.n_samples);

  for (long i = 0; i < spec.n_samples; ++i) {
    auto coeffs = sample_coefficients(spec.dist, derive_draw_seed(spec.seed, i),
                                      grid->k_max());
    DataPair dom = randomize(data, coeffs);
    SpectralField a(grid, true), b(grid, true);
    if (spec.evolution == 'u') {
      a.coef = dom.f1.coef;
      b.coef = dom.f2.coef;
    } else {
      // the companion solves the linear flow from (f2/<D>, -|D|^2 f1/<D>)
      for (std::size_t j = 0; j < N; ++j) {
        double jap = std::sqrt(1.0 + xr[j] * xr[j]);
        a.coef[j] = dom.f2.coef[j] / jap;
        b.coef[j] = -(xr[j] * xr[j]) * dom.f1.coef[j] / jap;
      }
    }
    std::vector<double> vals(nt + 1);
    SpectralField w(grid, true);
    for (int j = 0; j <= nt; ++j) {
      const SpectralField* probe = &a;
      if (!weight.empty()) {
        w.coef = a.coef;
        kernels::apply_real_symbol(w.coef.data(), weight.data(), N);
        probe = &w;
      }
      vals[j] = lebesgue_norm(*probe, r);
      if (j < nt)
        kernels::rotate_pair(a.coef.data(), b.coef.data(), cds.data(), sds.data(),
                             xr.data(), N);
    }
    est.draw_values[i] = mixed_norm_from_values(vals, 0.0, h, q, delta);
  }
  finalize_tails(est, lambda_grid);
  return est;
}

}  // namespace rwave
