#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "regmatch/experiment.hpp"

using namespace regmatch;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("regmatch_exp_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("key-value config parsing") {
  TempDir dir;
  fs::path cfg_path = dir.path / "exp.cfg";
  std::ofstream(cfg_path) << "# a comment\n"
                             "kind = luby\n"
                             "generator = bipartite\n"
                             "n = 10\n"
                             "delta = 3\n"
                             "trials = 5\n"
                             "seed = 42\n"
                             "eps = 0.25\n";
  ExperimentConfig cfg = load_config_file(cfg_path.string());
  CHECK(cfg.kind == "luby");
  CHECK(cfg.generator == "bipartite");
  CHECK(cfg.n == 10);
  CHECK(cfg.delta == 3);
  CHECK(cfg.trials == 5);
  REQUIRE(cfg.seed.has_value());
  CHECK(*cfg.seed == 42);
  CHECK(cfg.eps == "0.25");
}

TEST_CASE("json config parsing") {
  TempDir dir;
  fs::path cfg_path = dir.path / "exp.json";
  std::ofstream(cfg_path) << R"({"kind":"validate","generator":"general","n":12,)"
                             R"("delta":3,"seed":7,"trials":1})";
  ExperimentConfig cfg = load_config_file(cfg_path.string());
  CHECK(cfg.kind == "validate");
  CHECK(cfg.generator == "general");
  CHECK(cfg.n == 12);
  REQUIRE(cfg.seed.has_value());
}

TEST_CASE("unknown keys are rejected") {
  TempDir dir;
  fs::path cfg_path = dir.path / "bad.cfg";
  std::ofstream(cfg_path) << "kind = luby\nbogus = 1\n";
  CHECK_THROWS(load_config_file(cfg_path.string()));
}

TEST_CASE("seed is mandatory") {
  ExperimentConfig cfg;
  cfg.kind = "validate";
  cfg.generator = "bipartite";
  cfg.n = 4;
  cfg.delta = 2;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("validate experiment reports the degree facts") {
  ExperimentConfig cfg;
  cfg.kind = "validate";
  cfg.generator = "bipartite";
  cfg.n = 6;
  cfg.delta = 2;
  cfg.seed = 5;
  ExperimentReport rep = run_experiment(cfg);
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0]["is_regular"] == true);
  CHECK(rep.records[0]["regular_degree"] == 2);
  CHECK(rep.records[0]["is_bipartite"] == true);
  CHECK(rep.passed);
  CHECK(rep.provenance["substitutions"].size() == 2);
}

TEST_CASE("luby experiment: per-edge frequencies near 1/2 on P_3") {
  TempDir dir;
  fs::path graph_path = dir.path / "p3.edges";
  std::ofstream(graph_path) << "3 2\n0 1\n1 2\n";
  ExperimentConfig cfg;
  cfg.kind = "luby";
  cfg.graph_file = graph_path.string();
  cfg.trials = 10000;
  cfg.seed = 9;
  ExperimentReport rep = run_experiment(cfg);
  CHECK(rep.records.size() == 10000);
  auto freq = rep.aggregates["edge_match_frequency"];
  REQUIRE(freq.size() == 2);
  CHECK(freq[0].get<double>() == doctest::Approx(0.5).epsilon(0.04));
  CHECK(freq[1].get<double>() == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("reports are written atomically and reproducibly") {
  TempDir dir;
  ExperimentConfig cfg;
  cfg.kind = "preservation";
  cfg.generator = "bipartite";
  cfg.n = 32;
  cfg.delta = 4;
  cfg.rounds = 3;
  cfg.trials = 4;
  cfg.seed = 77;
  cfg.workers = 2;

  ExperimentReport rep1 = run_experiment(cfg);
  write_report(rep1, dir.path.string(), "run");
  std::string csv1 = slurp(dir.path / "run.csv");
  std::string json1 = slurp(dir.path / "run.json");

  ExperimentReport rep2 = run_experiment(cfg);
  write_report(rep2, dir.path.string(), "run");
  CHECK(slurp(dir.path / "run.csv") == csv1);
  CHECK(slurp(dir.path / "run.json") == json1);
  CHECK(csv1.find("trial") != std::string::npos);
  CHECK(!fs::exists(dir.path / "run.csv.tmp"));
}

TEST_CASE("csv aggregates agree with recomputation from records") {
  ExperimentConfig cfg;
  cfg.kind = "node_avg";
  cfg.generator = "bipartite";
  cfg.n = 24;
  cfg.delta = 4;
  cfg.trials = 6;
  cfg.seed = 3;
  ExperimentReport rep = run_experiment(cfg);
  double mean = 0;
  for (const auto& rec : rep.records) mean += rec["node_averaged_time"].get<double>();
  mean /= static_cast<double>(rep.records.size());
  CHECK(rep.aggregates["columns"]["node_averaged_time"]["mean"].get<double>() ==
        doctest::Approx(mean));
  CHECK(rep.passed);
}

TEST_CASE("martingale: iid bernoulli respects both tails") {
  for (const char* kind : {"lower", "upper"}) {
    MartingaleCheckResult res = mc_martingale_check(kind, "bernoulli", 1000, 1.0 / 6.0, 4000, 5);
    CHECK(!res.any_violation);
    CHECK(res.p_high_sum == doctest::Approx(1000.0 / 6.0));
    for (const auto& row : res.grid) {
      CHECK(row.empirical <= row.bound + 3 * row.stderr_est);
    }
  }
}

TEST_CASE("martingale: degenerate zero process") {
  MartingaleCheckResult res = mc_martingale_check("upper", "zero", 500, 0.0, 2000, 6);
  CHECK(!res.any_violation);
  for (const auto& row : res.grid) CHECK(row.empirical == 0.0);
  // Lower kind has no valid lambda below P_low = 0: empty grid, no violation.
  MartingaleCheckResult lower = mc_martingale_check("lower", "zero", 500, 0.0, 100, 6);
  CHECK(lower.grid.empty());
  CHECK(!lower.any_violation);
}

TEST_CASE("martingale: adversarial alternating process stays below the upper bound") {
  MartingaleCheckResult res =
      mc_martingale_check("upper", "alternating", 1000, 0.3, 4000, 8);
  CHECK(!res.any_violation);
  CHECK(res.p_low_sum == doctest::Approx(0.0));
  CHECK(res.p_high_sum == doctest::Approx(150.0));
}

TEST_CASE("lowerbound experiment end to end") {
  TempDir dir;
  ExperimentConfig cfg;
  cfg.kind = "lowerbound";
  cfg.family = "cycle";
  cfg.lb_r = 2;
  cfg.lb_k = 4;
  cfg.round_budget = 2;
  cfg.trials = 10;
  cfg.seed = 13;
  cfg.out_dir = (dir.path / "lb").string();
  cfg.threshold = 0.0;
  ExperimentReport rep = run_experiment(cfg);
  CHECK(rep.records.size() == 10);
  CHECK(rep.passed);
  CHECK(fs::exists(dir.path / "lb" / "instance.edges"));
  CHECK(fs::exists(dir.path / "lb" / "instance.json"));
}

TEST_CASE("fast experiment pass counting against a threshold") {
  ExperimentConfig cfg;
  cfg.kind = "fast";
  cfg.generator = "bipartite";
  cfg.n = 200;
  cfg.delta = 16;
  cfg.eps = "0.2";
  cfg.trials = 5;
  cfg.seed = 21;
  cfg.threshold = 0.0;  // report-only
  ExperimentReport rep = run_experiment(cfg);
  CHECK(rep.records.size() == 5);
  for (const auto& rec : rep.records) {
    CHECK(rec["unmatched_fraction"].get<double>() >= 0.0);
  }
}
