#include "rwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwave/kernels.hpp"
#include "rwave/norms.hpp"

namespace rwave {

ExponentTable exponent_table(double p) {
  if (!(p > 3.0 && p < 5.0))
    throw std::invalid_argument("exponent_table: p must lie in (3, 5)");
  ExponentTable ex;
  ex.p = p;
  ex.s_c = 1.5 - 2.0 / (p - 1.0);
  ex.s_low = (p - 1.0) / (p + 1.0);
  ex.q = 2.0 * p / (p - 3.0);
  ex.alpha = (5.0 - p) / 2.0;
  return ex;
}

double lwp_window(double lambda, double p, double c_T) {
  double e = 2.0 * (p - 1.0) / (5.0 - p);
  return c_T * std::pow(std::max(lambda, 1e-12), -e);
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::reached_tmax: return "reached_Tmax";
    case RunStatus::blowup: return "blowup";
    default: return "contraction_failure";
  }
}

namespace {

// G(u) = sign * |u|^{p-1} u evaluated on the padded physical grid, for u
// given as a coefficient sum uf + v on the plain grid.
std::vector<cplx> eval_forcing(const GridPtr& grid, const std::vector<cplx>& uf,
                               const std::vector<cplx>& v, double p, double sign,
                               int pad_factor = 2) {
  SpectralField z(grid, true);
  for (std::size_t i = 0; i < z.coef.size(); ++i) z.coef[i] = uf[i] + v[i];
  auto phys = to_physical_oversampled(z, pad_factor);
  kernels::pointwise_power(phys.data(), phys.size(), p);
  SpectralField g = from_physical_oversampled(grid, phys, pad_factor);
  if (sign != 1.0)
    for (auto& c : g.coef) c *= sign;
  return std::move(g.coef);
}

double l2_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

double l2_abs(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const auto& c : a) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

SpectralField nonlinearity(const SpectralField& u, double p, int pad_factor) {
  auto phys = to_physical_oversampled(u, pad_factor);
  kernels::pointwise_power(phys.data(), phys.size(), p);
  return from_physical_oversampled(u.grid, phys, pad_factor);
}

double aliasing_residual(const SpectralField& u, double p) {
  SpectralField g2 = nonlinearity(u, p, 2);
  SpectralField g3 = nonlinearity(u, p, 3);
  return l2_diff(g2.coef, g3.coef);
}

StatePair picard_solve(const StatePair& v_init, FreeEvolutionSampler& sampler,
                       double t0, double T, const SolverConfig& cfg,
                       WindowStats& stats, const StepObserver& observer,
                       PicardStart start) {
  const GridPtr& grid = v_init.v.grid;
  const auto& r = grid->xi_abs();
  const std::size_t N = grid->size();
  const int nsteps = std::max(1, static_cast<int>(std::llround(T / cfg.dt)));
  const double ds = T / nsteps;
  const double sign = cfg.defocusing ? 1.0 : -1.0;
  const double half = 0.5 * ds;

  stats = WindowStats{};
  stats.t0 = t0;
  stats.T = T;
  stats.steps = nsteps;

  std::vector<double> cds(N), sds(N);
  for (std::size_t i = 0; i < N; ++i) {
    cds[i] = std::cos(ds * r[i]);
    sds[i] = snc(ds, r[i]);
  }

  // Forcing data pair at the window start; each sweep rotates a copy.
  std::vector<cplx> uf0a = free_evolution(sampler.data(), t0).coef;
  std::vector<cplx> uf0b = free_velocity(sampler.data(), t0).coef;

  // Forcing values of the current iterate at every step, and the previous
  // iterate positions for the sup-in-time residual.
  std::vector<std::vector<cplx>> G(nsteps + 1), Vprev(nsteps + 1);
  {
    std::vector<cplx> ua = uf0a, ub = uf0b;
    std::vector<cplx> la = v_init.v.coef, lb = v_init.vt.coef;
    std::vector<cplx> zero(N, cplx(0.0, 0.0));
    for (int j = 0; j <= nsteps; ++j) {
      const std::vector<cplx>& vj = start == PicardStart::zero ? zero : la;
      G[j] = eval_forcing(grid, ua, vj, cfg.p, sign);
      Vprev[j] = vj;
      if (j < nsteps) {
        kernels::rotate_pair(ua.data(), ub.data(), cds.data(), sds.data(), r.data(), N);
        kernels::rotate_pair(la.data(), lb.data(), cds.data(), sds.data(), r.data(), N);
      }
    }
  }
  Vprev[0] = v_init.v.coef;

  // The window-start forcing value never changes across sweeps.
  const std::vector<cplx> G0 = eval_forcing(grid, uf0a, v_init.v.coef, cfg.p, sign);

  std::vector<cplx> ua(N), ub(N), la(N), lb(N), I(N), J(N), vcur(N), vtcur(N), hold;
  bool converged = false;
  double prev_res = 0.0;
  while (stats.iterations < cfg.picard_max_iters && !converged) {
    ua = uf0a;
    ub = uf0b;
    la = v_init.v.coef;
    lb = v_init.vt.coef;
    std::fill(I.begin(), I.end(), cplx(0.0, 0.0));
    std::fill(J.begin(), J.end(), cplx(0.0, 0.0));
    hold = G0;
    double res = 0.0;
    for (int j = 0; j < nsteps; ++j) {
      kernels::axpy(J.data(), G[j].data(), half, N);
      G[j] = std::move(hold);
      kernels::rotate_pair(I.data(), J.data(), cds.data(), sds.data(), r.data(), N);
      kernels::rotate_pair(ua.data(), ub.data(), cds.data(), sds.data(), r.data(), N);
      kernels::rotate_pair(la.data(), lb.data(), cds.data(), sds.data(), r.data(), N);
      kernels::axpy(J.data(), G[j + 1].data(), half, N);
      for (std::size_t i = 0; i < N; ++i) {
        vcur[i] = la[i] - I[i];
        vtcur[i] = lb[i] - J[i];
      }
      res = std::max(res, l2_diff(vcur, Vprev[j + 1]));
      Vprev[j + 1] = vcur;
      hold = eval_forcing(grid, ua, vcur, cfg.p, sign);
    }
    G[nsteps] = std::move(hold);

    ++stats.iterations;
    stats.residuals.push_back(res);
    if (!std::isfinite(res) || res > cfg.blowup_threshold) break;
    if (stats.iterations > 1 && prev_res > 0.0) {
      stats.contraction_ratio = res / prev_res;
      if (stats.iterations >= 3 && stats.contraction_ratio >= 1.0) break;
    }
    prev_res = res;
    if (res < cfg.picard_tol) converged = true;
  }
  stats.converged = converged;
  if (!converged) return v_init;

  // One more application of the map using the stored forcing: costs only
  // rotations, feeds the observer, and yields the returned end state.
  la = v_init.v.coef;
  lb = v_init.vt.coef;
  std::fill(I.begin(), I.end(), cplx(0.0, 0.0));
  std::fill(J.begin(), J.end(), cplx(0.0, 0.0));
  bool real_flag = v_init.v.is_real && v_init.vt.is_real && sampler.data().f1.is_real &&
                   sampler.data().f2.is_real;
  StatePair out{SpectralField(grid, real_flag), SpectralField(grid, real_flag)};
  for (int j = 0; j < nsteps; ++j) {
    kernels::axpy(J.data(), G[j].data(), half, N);
    kernels::rotate_pair(I.data(), J.data(), cds.data(), sds.data(), r.data(), N);
    kernels::rotate_pair(la.data(), lb.data(), cds.data(), sds.data(), r.data(), N);
    kernels::axpy(J.data(), G[j + 1].data(), half, N);
    for (std::size_t i = 0; i < N; ++i) {
      out.v.coef[i] = la[i] - I[i];
      out.vt.coef[i] = lb[i] - J[i];
    }
    if (observer) observer(t0 + (j + 1) * ds, out);
  }
  return out;
}

StatePair reference_integrate(const StatePair& v_init, FreeEvolutionSampler& sampler,
                              double t0, double t1, double dt, const SolverConfig& cfg,
                              const StepObserver& observer) {
  const GridPtr& grid = v_init.v.grid;
  const auto& r = grid->xi_abs();
  const std::size_t N = grid->size();
  const int nsteps = std::max(1, static_cast<int>(std::llround((t1 - t0) / dt)));
  const double ds = (t1 - t0) / nsteps;
  const double sign = cfg.defocusing ? 1.0 : -1.0;

  std::vector<double> ch(N), sh(N);
  for (std::size_t i = 0; i < N; ++i) {
    ch[i] = std::cos(0.5 * ds * r[i]);
    sh[i] = snc(0.5 * ds, r[i]);
  }

  bool real_flag = v_init.v.is_real && v_init.vt.is_real && sampler.data().f1.is_real &&
                   sampler.data().f2.is_real;
  StatePair st{SpectralField(grid, real_flag), SpectralField(grid, real_flag)};
  st.v.coef = v_init.v.coef;
  st.vt.coef = v_init.vt.coef;
  for (int j = 0; j < nsteps; ++j) {
    kernels::rotate_pair(st.v.coef.data(), st.vt.coef.data(), ch.data(), sh.data(),
                         r.data(), N);
    SpectralField umid = sampler.u(t0 + (j + 0.5) * ds);
    std::vector<cplx> g = eval_forcing(grid, umid.coef, st.v.coef, cfg.p, sign);
    kernels::axpy(st.vt.coef.data(), g.data(), -ds, N);
    kernels::rotate_pair(st.v.coef.data(), st.vt.coef.data(), ch.data(), sh.data(),
                         r.data(), N);
    if (observer) observer(t0 + (j + 1) * ds, st);
  }
  return st;
}

namespace {

// Forward-looking size of the forcing over [t0, t0 + T]: L^q in time of the
// L^{2p} space norm, sampled on a short uniform stencil.
double forcing_norm(FreeEvolutionSampler& sampler, double t0, double T,
                    const ExponentTable& ex) {
  const int nsamp = 8;
  double dts = T / nsamp;
  std::vector<double> vals(nsamp + 1);
  for (int j = 0; j <= nsamp; ++j)
    vals[j] = lebesgue_norm(sampler.u(t0 + j * dts), 2.0 * ex.p);
  return mixed_norm_from_values(vals, t0, dts, ex.q, 0.0);
}

}  // namespace

SolutionTrajectory global_extend(const DataPair& randomized, const SolverConfig& cfg,
                                 const StepObserver& observer) {
  ExponentTable ex = exponent_table(cfg.p);
  FreeEvolutionSampler sampler(randomized);
  const GridPtr& grid = randomized.f1.grid;
  bool real_flag = randomized.f1.is_real && randomized.f2.is_real;

  SolutionTrajectory traj;
  StatePair state{SpectralField(grid, real_flag), SpectralField(grid, real_flag)};
  double t = 0.0;
  if (observer) observer(0.0, state);

  double probe = cfg.max_window;
  bool aliasing_done = false;
  while (t < cfg.T_max - 1e-12) {
    double T;
    if (cfg.window_policy == "fixed") {
      T = cfg.fixed_window;
    } else {
      double lambda = pair_sobolev_norm(state.v, state.vt, 1.0) +
                      forcing_norm(sampler, t, probe, ex);
      T = lwp_window(lambda, cfg.p, cfg.c_T);
    }
    T = std::clamp(T, cfg.dt, std::min(cfg.max_window, cfg.T_max - t));

    bool ok = false;
    for (int attempt = 0; attempt <= cfg.picard_retries && !ok; ++attempt) {
      WindowStats stats;
      StatePair next = picard_solve(state, sampler, t, T, cfg, stats, observer);
      if (stats.converged) {
        traj.windows.push_back(stats);
        state = std::move(next);
        t += T;
        probe = T;
        ok = true;
      } else if (T > cfg.dt * (1.0 + 1e-9)) {
        T = std::max(0.5 * T, cfg.dt);
      } else {
        traj.windows.push_back(stats);
        break;
      }
    }
    if (!ok) {
      traj.status = RunStatus::contraction_failure;
      break;
    }

    double size = l2_abs(state.v.coef) + l2_abs(state.vt.coef);
    if (!std::isfinite(size) || size > cfg.blowup_threshold) {
      traj.status = RunStatus::blowup;
      break;
    }

    if (!aliasing_done) {
      SpectralField u = sampler.u(t);
      u += state.v;
      traj.aliasing_residue = aliasing_residual(u, cfg.p);
      aliasing_done = true;
    }
  }

  traj.t_end = t;
  traj.final_state = std::move(state);
  return traj;
}

}  // namespace rwave
