#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "regmatch/graph.hpp"

namespace regmatch {

// One experiment invocation. Seeds are mandatory: reports must be
// reproducible from the config alone, so there is no wall-clock default.
struct ExperimentConfig {
  std::string kind;  // validate generate luby preservation tv warmup fast
                     // node_avg lowerbound martingale

  // Graph source: a file, or one of the generators.
  std::string graph_file;
  std::string generator;  // "bipartite" | "general" | "" (file)
  std::int64_t n = 0;     // per-side count for bipartite
  std::int64_t delta = 0;

  // Algorithm parameters.
  std::string eps = "0.1";  // parsed exactly where rationals matter
  std::int32_t rounds = 1;
  int c_prime = 2;
  std::int64_t hyperedge_cap = 10'000'000;
  std::optional<std::int64_t> phase_limit;
  std::int64_t tv_samples = 100000;

  // Lower-bound block.
  std::string family = "cycle";
  std::int32_t lb_r = 1;
  std::int32_t lb_rho = 2;
  std::int32_t lb_k = 2;
  std::int32_t round_budget = 1;
  std::string algo = "luby_multi";

  // Martingale block.
  std::string mc_kind = "lower";       // upper | lower
  std::string mc_process = "bernoulli";  // bernoulli | zero | alternating
  std::int64_t mc_t = 1000;
  double mc_p = 1.0 / 6.0;

  // Run control.
  std::int64_t trials = 1;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::int32_t workers = 1;
  double threshold = -1.0;  // kind-specific pass threshold; < 0 disables
};

// Key-value text ("key = value", '#' comments) or JSON when the path ends
// in .json.
ExperimentConfig load_config_file(const std::string& path);

struct ExperimentReport {
  nlohmann::json config_echo;
  std::vector<nlohmann::json> records;  // one flat object per trial
  nlohmann::json aggregates;            // mean/stddev/min/max per numeric column + extras
  nlohmann::json provenance;            // version + black-box substitution notes
  bool passed = true;
};

// Dispatches on cfg.kind, farming trials out to `workers` threads; records
// land in trial order regardless of scheduling.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// CSV (per-trial records) and JSON (config echo + aggregates), both written
// to temp files and renamed into place.
void write_report(const ExperimentReport& report, const std::string& out_dir,
                  const std::string& name);

void atomic_write_file(const std::string& path, const std::string& content);

// Builds (or loads) the graph named by the config.
Graph graph_from_config(const ExperimentConfig& cfg);

// ---- shifted-martingale tail checks ----

// exp(-(lambda-P)^2 / (8*M*P + 2*M*(lambda-P)/3)), for lambda > P.
double shifted_martingale_upper_bound(double lambda, double p_sum, double m);
// exp(-(Pl-lambda)^2 / (8*M*Ph + 2*M*(Pl-lambda)/3)), for lambda < Pl.
double shifted_martingale_lower_bound(double lambda, double pl_sum, double ph_sum, double m);

struct MartingaleGridRow {
  double lambda = 0.0;
  double bound = 0.0;
  double empirical = 0.0;
  double stderr_est = 0.0;
  bool violation = false;
};

struct MartingaleCheckResult {
  std::string kind;
  std::string process;
  std::int64_t t = 0;
  std::int64_t trials = 0;
  double p_low_sum = 0.0;
  double p_high_sum = 0.0;
  std::vector<MartingaleGridRow> grid;
  bool any_violation = false;
};

// Simulates the named boolean process (per-step means declared up front),
// then compares empirical tail frequencies on a lambda grid against the
// closed-form bounds; a row is flagged only past three standard errors.
// Throws std::invalid_argument if a trajectory breaches its declared range.
MartingaleCheckResult mc_martingale_check(const std::string& kind, const std::string& process,
                                          std::int64_t t, double p, std::int64_t trials,
                                          std::uint64_t seed);

// Runs fn(trial) for every trial index on up to `workers` threads.
void parallel_trials(std::int64_t trials, std::int32_t workers,
                     const std::function<void(std::int64_t)>& fn);

extern const char* const kVersion;
extern const char* const kSubstitutionNotes[2];

}  // namespace regmatch
