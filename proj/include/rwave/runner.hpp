#pragma once

#include <filesystem>
#include <stdexcept>

#include "rwave/deviation.hpp"
#include "rwave/energy.hpp"

namespace rwave {

// Config invalid: message lists every violated parameter window. CLI exit 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Filesystem problem. CLI exit 4.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Replay produced different bytes than the manifest records. CLI exit 3.
struct ChecksumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One flat bag of settings; a serialized snapshot fully determines a run.
struct ExperimentConfig {
  // [grid]
  int points_per_axis = 32;
  int box_multiple = 2;
  // [physics]
  double p = 4.0;
  double s = 0.75;
  double delta = 0.0;  // 0 = midpoint of the admissible window
  double eps_plus = 0.01;
  double amplitude = 0.05;
  std::string profile = "powerlaw";
  // [randomization]
  std::string distribution = "gaussian";
  std::uint64_t seed = 12345;
  int n_draws = 20;
  // [solver]
  double dt = 2e-3;
  double T_max = 20.0;
  double picard_tol = 1e-9;
  int picard_max_iters = 50;
  double c_T = 0.25;
  double blowup_threshold = 1e12;
  double max_window = 0.25;
  double output_interval = 0.05;
  std::string window_policy = "paper_formula";
  double fixed_window = 0.1;
  bool defocusing = true;
  // [campaign]
  double q = 4.0;
  double r = 4.0;
  double delta_weight = 1.3;
  double T_mc = 20.0;
  long n_samples = 2000;
  std::string lambda_policy = "auto";
  std::string evolution = "u";
  double sigma_w = 0.0;
  int time_samples = 0;
  // [output]
  std::string output_dir = "out";

  std::string to_ini() const;
  static ExperimentConfig from_ini(const std::string& text);

  // All violated parameter windows for the given mode; empty means valid.
  std::vector<std::string> violations(const std::string& mode) const;

  SolverConfig solver_config() const;
  EnvelopeParams envelope_params() const;  // validated, delta resolved
  CampaignSpec campaign_spec() const;
};

std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t file_fnv1a64(const std::filesystem::path& path);

int worker_count();  // RWAVE_WORKERS, else the OpenMP default

struct RunResult {
  std::filesystem::path run_dir;
  int exit_code = 0;  // 0 success, 3 numerical failure in some draw
  std::string summary;
};

// modes: simulate | tails | audit | exponents. Writes
// <output_dir>/<run-id>/{config.snapshot, manifest.json, ...} and returns the
// run directory. Throws ConfigError before writing anything.
RunResult run_experiment(const ExperimentConfig& config, const std::string& mode);

// Regenerate every derived artifact from the manifest's config and seed into
// <run-dir>-replay and require byte identity with the recorded checksums.
RunResult replay(const std::filesystem::path& manifest_path);

}  // namespace rwave
