#pragma once

#include "rwave/solver.hpp"

namespace rwave {

struct EnergyComponents {
  double kinetic = 0.0;    // 1/2 |v_t|_L2^2
  double gradient = 0.0;   // 1/2 |grad v|_L2^2
  double mass = 0.0;       // 1/2 |v|_L2^2
  double potential = 0.0;  // 1/(p+1) |u_f + v|_{p+1}^{p+1}
  double total() const { return kinetic + gradient + mass + potential; }
};

struct EnergyRecord {
  double t = 0.0;
  double E = 0.0;
  EnergyComponents comp;
  double dEdt_formula = 0.0;
  double dEdt_fd = 0.0;
  double H1_norm_v = 0.0;
  double L2_norm_vt = 0.0;
  double Lp1_norm_u = 0.0;
  double A_of_t = 0.0;
  double B_of_t = 0.0;
  double a_slice = 0.0;  // integrand of A at t
  double b_slice = 0.0;  // integrand of B at t
  int window_index = 0;
  bool fd_central = false;  // three-point dEdt_fd; endpoints are one-sided
};

// Parameters of the growth envelope. delta and eps_plus must sit inside the
// window where the bound applies; validate() throws otherwise.
struct EnvelopeParams {
  double s = 0.75;
  double delta = 0.0;       // 0 selects the midpoint default at validate()
  double eps_plus = 0.01;
  void validate(double p);  // may fill delta with its default
};

double delta_midpoint(double p, double s);

EnergyComponents modified_energy(const StatePair& v, const SpectralField& u_f, double p);

// Exact derivative of the modified energy:
//   dE/dt = int v v_t dx + int <grad> u~ |u_f + v|^{p-1} (u_f + v) dx,
// both terms as spectral pairings of band-limited fields.
double energy_derivative(const SpectralField& v, const SpectralField& vt,
                         const SpectralField& u_f, const SpectralField& u_tilde,
                         double p);

struct GrowthFunctionals {
  double A = 0.0;      // |<grad>^{s-delta} u~|_{L1_t Linf_x}
  double B = 0.0;      // sum of the three terms below
  double B_pot = 0.0;  // |u~|^{p+1}_{L^{p+1}_{t,x}}
  double B_inf = 0.0;  // |<grad>^{s-delta} u~|^2_{L2_t Linf_x}
  double B_l2 = 0.0;   // |<grad>^{(p-1)/2 (1-s+delta+eps)} u_f|^4_{L4_t L2_x}
};

// A and B over [0, T] by uniform trapezoid sampling of the free evolution.
GrowthFunctionals growth_functionals(const DataPair& randomized, const EnvelopeParams& par,
                                     double p, double T, double dt_sample);

// |(v1,v2)|^2_{H1 x L2 product} + |v1|^{p+1}_{p+1} + |f1|^{p+1}_{p+1}.
double initial_block(const StatePair& v_init, const SpectralField& f1_omega, double p);

// C (block + B(T)) exp(C (T + A(T))).
double gronwall_envelope(double block, double A, double B, double T, double C);

// Streams solver steps into EnergyRecords at a fixed output cadence, with the
// derivative also measured by a three-point finite difference, plus running
// A(t), B(t) integrals of the forcing. One monitor per run.
class EnergyMonitor {
 public:
  EnergyMonitor(const DataPair& randomized, double p, EnvelopeParams par,
                double output_interval);

  void on_step(double t, const StatePair& state);
  StepObserver observer();  // binds on_step; keep the monitor alive
  void flush();             // finalize a trailing record, if any

  const std::vector<EnergyRecord>& records() const { return records_; }
  GrowthFunctionals totals() const { return growth_; }

 private:
  EnergyComponents evaluate(double t, const StatePair& state);
  void advance_growth(double t);

  FreeEvolutionSampler sampler_;
  double p_;
  EnvelopeParams par_;
  double interval_;
  double next_out_ = 0.0;

  bool has_last_ = false;
  double last_t_ = 0.0;
  StatePair last_state_;

  bool pending_ = false;
  double pending_E_prev_ = 0.0, pending_h1_ = 0.0;

  GrowthFunctionals growth_;
  double growth_t_ = 0.0;
  bool growth_started_ = false;
  double prev_a_ = 0.0, prev_b1_ = 0.0, prev_b3_ = 0.0;

  std::vector<EnergyRecord> records_;
};

// Minimal C whose envelope dominates the running sup of |(v, v_t)|^2_{H1xL2}
// over all records with t <= T_fit. Bisection on C; throws if no C works.
double fit_envelope_C(const std::vector<EnergyRecord>& records, double block,
                      double T_fit);

// Smallest envelope-minus-trajectory margin over records with t in [T_lo, T_hi].
double envelope_margin(const std::vector<EnergyRecord>& records, double block,
                       double C, double T_lo, double T_hi);

struct AuditResult {
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
};

// |  |grad|^sigma G(u) |_{L^r}  vs  | G'(u) |_{L^r1} | |grad|^sigma u |_{L^r2}
// with G(u) = |u|^{p-1} u, for a Hoelder triple 1/r = 1/r1 + 1/r2.
AuditResult chain_rule_audit(const SpectralField& u, double p, double sigma,
                             double r, double r1, double r2);

// | |grad|^sigma f |_{L^{(p+1)/2}} vs
// | |grad|^{(p-1)/2 sigma} f |^{2/(p-1)}_{L2} |f|^{(p-3)/(p-1)}_{L^{p+1}}.
AuditResult interpolation_audit(const SpectralField& f, double sigma, double p);

}  // namespace rwave
