#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rwave/runner.hpp"

namespace {

rwave::ExperimentConfig load_base_config(int argc, char** argv) {
  // The config file is applied first so explicit flags override it.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) throw rwave::IoError(std::string("cannot read config file ") + argv[i + 1]);
      std::ostringstream ss;
      ss << in.rdbuf();
      return rwave::ExperimentConfig::from_ini(ss.str());
    }
  }
  return {};
}

void bind_options(CLI::App* sub, rwave::ExperimentConfig& cfg) {
  std::string ignored;
  sub->add_option("--config", ignored, "config file (applied before flags)");
  sub->add_option("--points-per-axis", cfg.points_per_axis);
  sub->add_option("--box-multiple", cfg.box_multiple);
  sub->add_option("--p", cfg.p);
  sub->add_option("--s", cfg.s);
  sub->add_option("--delta", cfg.delta);
  sub->add_option("--eps-plus", cfg.eps_plus);
  sub->add_option("--amplitude", cfg.amplitude);
  sub->add_option("--profile", cfg.profile);
  sub->add_option("--distribution", cfg.distribution);
  sub->add_option("--seed", cfg.seed);
  sub->add_option("--n-draws", cfg.n_draws);
  sub->add_option("--dt", cfg.dt);
  sub->add_option("--t-max", cfg.T_max);
  sub->add_option("--picard-tol", cfg.picard_tol);
  sub->add_option("--picard-max-iters", cfg.picard_max_iters);
  sub->add_option("--c-t", cfg.c_T);
  sub->add_option("--blowup-threshold", cfg.blowup_threshold);
  sub->add_option("--max-window", cfg.max_window);
  sub->add_option("--output-interval", cfg.output_interval);
  sub->add_option("--window-policy", cfg.window_policy);
  sub->add_option("--fixed-window", cfg.fixed_window);
  sub->add_option("--defocusing", cfg.defocusing);
  sub->add_option("--q", cfg.q, "time exponent, inf allowed");
  sub->add_option("--r", cfg.r, "space exponent, inf allowed");
  sub->add_option("--delta-weight", cfg.delta_weight);
  sub->add_option("--t-mc", cfg.T_mc);
  sub->add_option("--n-samples", cfg.n_samples);
  sub->add_option("--evolution", cfg.evolution, "u or m");
  sub->add_option("--sigma-w", cfg.sigma_w);
  sub->add_option("--time-samples", cfg.time_samples);
  sub->add_option("--out", cfg.output_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudospectral lab for the defocusing nonlinear wave equation "
               "with unit-scale randomized data"};
  app.require_subcommand(1);

  rwave::ExperimentConfig cfg;
  try {
    cfg = load_base_config(argc, argv);
  } catch (const rwave::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 4;
  }

  std::string manifest;
  CLI::App* sim = app.add_subcommand("simulate", "global runs with energy monitoring");
  CLI::App* tails = app.add_subcommand("tails", "Monte Carlo tail campaigns");
  CLI::App* audit = app.add_subcommand("audit", "identity and inequality audits");
  CLI::App* expo = app.add_subcommand("exponents", "exponent table over p");
  CLI::App* rep = app.add_subcommand("replay", "regenerate artifacts from a manifest");
  for (CLI::App* sub : {sim, tails, audit, expo}) bind_options(sub, cfg);
  rep->add_option("manifest", manifest, "path to manifest.json")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    rwave::RunResult result;
    if (rep->parsed()) {
      result = rwave::replay(manifest);
    } else {
      std::string mode = app.get_subcommands().front()->get_name();
      result = rwave::run_experiment(cfg, mode);
    }
    std::cout << result.summary << "\n";
    std::cout << "artifacts: " << result.run_dir.string() << "\n";
    return result.exit_code;
  } catch (const rwave::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const rwave::ChecksumError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const rwave::IoError& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
}
