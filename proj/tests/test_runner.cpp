#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rwave/runner.hpp"

using namespace rwave;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_config(const std::string& tag) {
  ExperimentConfig cfg;
  cfg.points_per_axis = 8;
  cfg.box_multiple = 2;
  cfg.T_max = 0.2;
  cfg.n_draws = 2;
  cfg.output_interval = 0.05;
  cfg.n_samples = 30;
  cfg.time_samples = 8;
  cfg.T_mc = 2.0;
  cfg.output_dir = (fs::temp_directory_path() / ("rwave_test_" + tag)).string();
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("config snapshot round trip") {
  ExperimentConfig cfg = tiny_config("roundtrip");
  cfg.p = 3.7;
  cfg.seed = 987654321;
  cfg.defocusing = false;
  cfg.window_policy = "fixed";
  std::string ini = cfg.to_ini();
  ExperimentConfig back = ExperimentConfig::from_ini(ini);
  CHECK(back.to_ini() == ini);
  CHECK(back.p == cfg.p);
  CHECK(back.seed == cfg.seed);
  CHECK(back.defocusing == false);

  CHECK_THROWS_AS(ExperimentConfig::from_ini("[grid]\nbogus_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_ini("[physics]\np = not_a_number\n"),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_ini("[grid]\nno equals sign\n"), ConfigError);
}

TEST_CASE("parameter window violations") {
  ExperimentConfig ok = tiny_config("violations");
  CHECK(ok.violations("simulate").empty());
  CHECK(ok.violations("tails").empty());
  CHECK(ok.violations("audit").empty());
  CHECK(ok.violations("exponents").empty());

  ExperimentConfig bad_p = ok;
  bad_p.p = 2.0;
  CHECK(contains(bad_p.violations("simulate"), "Theorem 1.1 requires 3 < p < 5"));

  ExperimentConfig bad_s = ok;
  bad_s.s = 0.5;  // below (p-1)/(p+1) = 0.6 at p = 4
  CHECK(contains(bad_s.violations("simulate"),
                 "Theorem 1.1 requires (p-1)/(p+1) < s < 1"));
  CHECK(bad_s.violations("exponents").empty());  // the table needs only p

  ExperimentConfig bad_w = ok;
  bad_w.delta_weight = 1.0;
  CHECK(contains(bad_w.violations("tails"), "Lemma 2.6"));
  bad_w.q = kInf;
  CHECK(contains(bad_w.violations("tails"), "Lemma 2.8"));

  ExperimentConfig bad_h = ok;
  bad_h.r = kInf;
  bad_h.sigma_w = 0.9;  // above s
  CHECK(contains(bad_h.violations("tails"), "Cor. 2.7"));

  ExperimentConfig bad_g = ok;
  bad_g.points_per_axis = 12;
  CHECK(!bad_g.violations("simulate").empty());

  CHECK_THROWS_AS(run_experiment(bad_p, "simulate"), ConfigError);
  CHECK_THROWS_AS(run_experiment(ok, "frobnicate"), ConfigError);
}

TEST_CASE("simulate mode writes the full artifact layout") {
  ExperimentConfig cfg = tiny_config("simulate");
  fs::remove_all(cfg.output_dir);
  RunResult res = run_experiment(cfg, "simulate");
  CHECK(res.exit_code == 0);

  CHECK(fs::exists(res.run_dir / "config.snapshot"));
  CHECK(fs::exists(res.run_dir / "manifest.json"));
  CHECK(fs::exists(res.run_dir / "report.json"));
  for (int i = 0; i < cfg.n_draws; ++i) {
    fs::path d = res.run_dir / "draws" / std::to_string(i);
    CHECK(fs::exists(d / "trajectory.csv"));
    CHECK(fs::exists(d / "coefficients.rwcf"));
  }

  std::string snap = slurp(res.run_dir / "config.snapshot");
  CHECK(snap == cfg.to_ini());

  std::string csv = slurp(res.run_dir / "draws/0/trajectory.csv");
  CHECK(csv.rfind("# config_fnv64 ", 0) == 0);
  CHECK(csv.find("t,E,dEdt_formula,dEdt_fd,H1_norm_v,L2_norm_vt,Lp1_norm_u,"
                 "A_of_t,B_of_t,window_index") != std::string::npos);

  auto report = nlohmann::json::parse(slurp(res.run_dir / "report.json"));
  CHECK(report["n_reached_Tmax"].get<int>() == cfg.n_draws);
  CHECK(report["draws"].size() == static_cast<std::size_t>(cfg.n_draws));
  CHECK(report["draws"][0]["status"].get<std::string>() == "reached_Tmax");
  CHECK(report["draws"][0].contains("C_fit"));

  auto manifest = nlohmann::json::parse(slurp(res.run_dir / "manifest.json"));
  CHECK(manifest["mode"].get<std::string>() == "simulate");
  CHECK(manifest["seed"].get<std::uint64_t>() == cfg.seed);
  // config.snapshot + report.json + 2 files per draw
  CHECK(manifest["artifacts"].size() == static_cast<std::size_t>(2 + 2 * cfg.n_draws));

  fs::remove_all(cfg.output_dir);
}

TEST_CASE("simulate with zero draws succeeds trivially") {
  ExperimentConfig cfg = tiny_config("nodraws");
  cfg.n_draws = 0;
  fs::remove_all(cfg.output_dir);
  RunResult res = run_experiment(cfg, "simulate");
  CHECK(res.exit_code == 0);
  auto report = nlohmann::json::parse(slurp(res.run_dir / "report.json"));
  CHECK(report["n_reached_Tmax"].get<int>() == 0);
  fs::remove_all(cfg.output_dir);
}

TEST_CASE("tails and audit and exponents modes produce their reports") {
  ExperimentConfig cfg = tiny_config("modes");
  fs::remove_all(cfg.output_dir);

  RunResult tails = run_experiment(cfg, "tails");
  auto camp = nlohmann::json::parse(slurp(tails.run_dir / "campaign.json"));
  CHECK(camp.contains("verdict"));
  CHECK(camp.contains("truncation_weight"));
  CHECK(camp["lambda"].size() == camp["p_hat"].size());
  std::string ccsv = slurp(tails.run_dir / "campaign.csv");
  CHECK(ccsv.find("lambda,lambda_sq,log_p_hat") != std::string::npos);

  RunResult audit = run_experiment(cfg, "audit");
  auto aj = nlohmann::json::parse(slurp(audit.run_dir / "audit.json"));
  CHECK(aj["chain_rule_max_ratio"].get<double>() > 0.0);
  CHECK(aj["interpolation_max_ratio"].get<double>() > 0.0);
  CHECK(aj["velocity_identity_residual"].get<double>() < 1e-10);
  CHECK(aj["partition_of_unity_residual"].get<double>() < 1e-10);

  RunResult expo = run_experiment(cfg, "exponents");
  auto ej = nlohmann::json::parse(slurp(expo.run_dir / "exponents.json"));
  bool found = false;
  for (const auto& row : ej["table"]) {
    if (row["p"].get<double>() == 4.0) {
      found = true;
      CHECK(row["s_c"].get<double>() == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
      CHECK(row["q"].get<double>() == doctest::Approx(8.0).epsilon(1e-14));
    }
  }
  CHECK(found);
  CHECK(fs::exists(expo.run_dir / "exponents.csv"));
  CHECK(expo.summary.find("s_c") != std::string::npos);

  fs::remove_all(cfg.output_dir);
}

TEST_CASE("replay regenerates byte-identical artifacts and detects tampering") {
  ExperimentConfig cfg = tiny_config("replay");
  fs::remove_all(cfg.output_dir);
  RunResult res = run_experiment(cfg, "simulate");

  RunResult rep = replay(res.run_dir / "manifest.json");
  CHECK(rep.exit_code == 0);
  CHECK(rep.summary.find("byte-identically") != std::string::npos);

  // a different seed must change the artifact bytes
  auto manifest = nlohmann::json::parse(slurp(res.run_dir / "manifest.json"));
  manifest["seed"] = cfg.seed + 1;
  fs::path tampered = res.run_dir / "manifest_tampered.json";
  {
    std::ofstream out(tampered, std::ios::binary);
    out << manifest.dump(2) << "\n";
  }
  CHECK_THROWS_AS(replay(tampered), ChecksumError);

  CHECK_THROWS_AS(replay(res.run_dir / "missing.json"), IoError);

  fs::remove_all(cfg.output_dir);
}

TEST_CASE("worker count honors the environment override") {
  setenv("RWAVE_WORKERS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("RWAVE_WORKERS", "0", 1);  // invalid: fall back to the OpenMP default
  CHECK(worker_count() >= 1);
  unsetenv("RWAVE_WORKERS");
  CHECK(worker_count() >= 1);
}
