#pragma once

#include <functional>
#include <string>

#include "rwave/propagator.hpp"

namespace rwave {

// Exponents attached to the nonlinearity power p in (3, 5):
//   s_c   critical scaling regularity 3/2 - 2/(p-1)
//   s_low lower end of the admissible data regularity window, (p-1)/(p+1)
//   q     contraction space time exponent 2p/(p-3)
//   alpha time gain of the contraction, (5-p)/2
struct ExponentTable {
  double p, s_c, s_low, q, alpha;
  // Upper end of the admissible weight window for the energy growth bound.
  double delta_max(double s) const { return (p + 1.0) / (p - 1.0) * s - 1.0; }
};

ExponentTable exponent_table(double p);

// Local window length T = c_T * lambda^{-2(p-1)/(5-p)}; lambda bounds the
// data norm plus the forcing norm over the window.
double lwp_window(double lambda, double p, double c_T);

// Dealiased G(u) = |u|^{p-1} u for real spectral u: evaluated pointwise on a
// zero-padded physical grid (default 2x) and truncated back.
SpectralField nonlinearity(const SpectralField& u, double p, int pad_factor = 2);

// L2 size of the dealiasing residue: G computed with 2x versus 3x padding.
double aliasing_residual(const SpectralField& u, double p);

struct StatePair {
  SpectralField v, vt;
};

enum class RunStatus { reached_tmax, blowup, contraction_failure };
std::string to_string(RunStatus s);

struct SolverConfig {
  double p = 4.0;
  double dt = 2e-3;
  std::string window_policy = "paper_formula";  // or "fixed"
  double fixed_window = 0.1;
  double picard_tol = 1e-9;
  int picard_max_iters = 50;
  double blowup_threshold = 1e12;
  double T_max = 20.0;
  double c_T = 0.25;        // calibrated contraction constant
  double max_window = 0.25; // memory/latency cap on a single window
  bool defocusing = true;
  int picard_retries = 5;   // window halvings on contraction failure
};

// Called with every accepted time step of the final iterate.
using StepObserver = std::function<void(double t, const StatePair& state)>;

struct WindowStats {
  double t0 = 0.0, T = 0.0;
  int steps = 0;
  int iterations = 0;
  std::vector<double> residuals;  // sup-in-time L2 residual per iteration
  bool converged = false;
  double contraction_ratio = 0.0;  // last residual ratio
};

enum class PicardStart { zero, free_flow };

// Fixed point of the Duhamel map on one window. The forcing is the free
// evolution held by `sampler`; the returned state is the window-end state of
// the converged iterate. Throws nothing; inspect stats.converged.
StatePair picard_solve(const StatePair& v_init, FreeEvolutionSampler& sampler,
                       double t0, double T, const SolverConfig& cfg,
                       WindowStats& stats, const StepObserver& observer = {},
                       PicardStart start = PicardStart::zero);

// Strang-splitting reference integrator for the same forced equation:
// half-step exact linear flow, pointwise kick with the forcing evaluated at
// the midpoint, half-step linear flow. Independent of the Picard path.
StatePair reference_integrate(const StatePair& v_init, FreeEvolutionSampler& sampler,
                              double t0, double t1, double dt, const SolverConfig& cfg,
                              const StepObserver& observer = {});

struct SolutionTrajectory {
  RunStatus status = RunStatus::reached_tmax;
  double t_end = 0.0;
  std::vector<WindowStats> windows;
  StatePair final_state;
  double aliasing_residue = 0.0;  // 2x vs 3x padding check, first window
};

// Iterate local windows to T_max, recomputing lambda from the current state
// norm and the forward-window forcing norm after each window.
SolutionTrajectory global_extend(const DataPair& randomized, const SolverConfig& cfg,
                                 const StepObserver& observer = {});

}  // namespace rwave
