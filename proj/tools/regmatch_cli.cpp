// Command line front end: every subcommand builds an ExperimentConfig,
// runs it, writes CSV + JSON reports, and exits nonzero when the
// experiment's pass condition fails.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "regmatch/experiment.hpp"
#include "regmatch/warmup.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "reports";
  std::string report_name;
  std::int64_t trials = -1;
  std::int64_t seed = -1;
  int workers = -1;
  bool have_seed = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "key=value or .json config file");
  cmd->add_option("--seed", args.seed, "master seed (required unless set in the config)");
  cmd->add_option("--trials", args.trials, "trial count");
  cmd->add_option("--out", args.out_dir, "report output directory");
  cmd->add_option("--name", args.report_name, "report base name (default: the subcommand)");
  cmd->add_option("--workers", args.workers, "concurrent trial workers");
}

int run(regmatch::ExperimentConfig cfg, const CommonArgs& args, const std::string& fallback) {
  if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
  if (args.trials >= 0) cfg.trials = args.trials;
  if (args.workers >= 0) cfg.workers = args.workers;
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;

  regmatch::ExperimentReport report = regmatch::run_experiment(cfg);
  std::string name = args.report_name.empty() ? fallback : args.report_name;
  regmatch::write_report(report, cfg.out_dir, name);

  std::cout << (report.passed ? "PASS" : "FAIL") << ": " << cfg.kind << " ("
            << report.records.size() << " records) -> " << cfg.out_dir << "/" << name
            << ".{csv,json}" << std::endl;
  return report.passed ? 0 : 1;
}

regmatch::ExperimentConfig base_config(const CommonArgs& args, const std::string& kind) {
  regmatch::ExperimentConfig cfg;
  if (!args.config_path.empty()) cfg = regmatch::load_config_file(args.config_path);
  if (cfg.kind.empty()) cfg.kind = kind;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regmatch: matching algorithms and experiments on regular graphs"};
  app.require_subcommand(1);

  // generate
  CommonArgs gen_args;
  std::string gen_type = "bipartite";
  std::int64_t gen_n = 0, gen_delta = 0;
  auto* gen = app.add_subcommand("generate", "generate a regular graph and save its edge list");
  add_common(gen, gen_args);
  gen->add_option("--type", gen_type, "bipartite | general");
  gen->add_option("--n", gen_n, "node count (per side when bipartite)");
  gen->add_option("--delta", gen_delta, "degree");

  // validate
  CommonArgs val_args;
  std::string val_file;
  auto* val = app.add_subcommand("validate", "degree/bipartiteness report for a graph");
  add_common(val, val_args);
  val->add_option("--graph-file", val_file, "edge list file");

  // luby
  CommonArgs luby_args;
  std::string luby_file;
  std::string luby_type;
  std::int64_t luby_n = 0, luby_delta = 0;
  int luby_rounds = 1;
  int luby_cprime = 2;
  bool luby_tv = false;
  std::int64_t luby_samples = 100000;
  double luby_threshold = -1.0;
  auto* luby = app.add_subcommand("luby", "one-round / multi-round Luby experiments");
  add_common(luby, luby_args);
  luby->add_option("--graph-file", luby_file, "edge list file");
  luby->add_option("--type", luby_type, "generator: bipartite | general");
  luby->add_option("--n", luby_n, "node count (per side when bipartite)");
  luby->add_option("--delta", luby_delta, "degree");
  luby->add_option("--rounds", luby_rounds, "rounds (>1 switches to preservation snapshots)");
  luby->add_option("--c-prime", luby_cprime, "rank range exponent");
  luby->add_flag("--tv", luby_tv, "estimate the rank-vs-sequential distribution distance");
  luby->add_option("--samples", luby_samples, "samples per distribution for --tv");
  luby->add_option("--threshold", luby_threshold, "pass threshold for --tv");

  // warmup
  CommonArgs wu_args;
  std::string wu_file, wu_type, wu_eps = "0.3";
  std::int64_t wu_n = 0, wu_delta = 0, wu_cap = regmatch::kDefaultHyperedgeCap;
  std::int64_t wu_phase_limit = -1;
  auto* wu = app.add_subcommand("warmup", "sampling stage + phased augmenting driver");
  add_common(wu, wu_args);
  wu->add_option("--graph-file", wu_file, "edge list file");
  wu->add_option("--type", wu_type, "generator: bipartite | general");
  wu->add_option("--n", wu_n, "node count (per side when bipartite)");
  wu->add_option("--delta", wu_delta, "degree");
  wu->add_option("--eps", wu_eps, "driver accuracy (exact rational or decimal)");
  wu->add_option("--cap", wu_cap, "hyperedge cap per phase");
  wu->add_option("--phase-limit", wu_phase_limit, "truncate the phase count");

  // fast
  CommonArgs fast_args;
  std::string fast_file, fast_type, fast_eps = "0.05";
  std::int64_t fast_n = 0, fast_delta = 0;
  int fast_cprime = 2;
  double fast_threshold = -1.0;
  auto* fast = app.add_subcommand("fast", "color coding + logarithmic Luby driver");
  add_common(fast, fast_args);
  fast->add_option("--graph-file", fast_file, "edge list file");
  fast->add_option("--type", fast_type, "generator: bipartite | general");
  fast->add_option("--n", fast_n, "node count (per side when bipartite)");
  fast->add_option("--delta", fast_delta, "degree");
  fast->add_option("--eps", fast_eps, "target unmatched fraction");
  fast->add_option("--c-prime", fast_cprime, "rank range exponent");
  fast->add_option("--threshold", fast_threshold,
                   "required fraction of trials within eps (default all)");

  // node-avg
  CommonArgs na_args;
  std::string na_file, na_type;
  std::int64_t na_n = 0, na_delta = 0;
  auto* na = app.add_subcommand("node-avg", "node-averaged maximal matching driver");
  add_common(na, na_args);
  na->add_option("--graph-file", na_file, "edge list file");
  na->add_option("--type", na_type, "generator: bipartite | general");
  na->add_option("--n", na_n, "node count (per side when bipartite)");
  na->add_option("--delta", na_delta, "degree");

  // lowerbound
  CommonArgs lb_args;
  std::string lb_family = "cycle", lb_algo = "luby_multi";
  std::int64_t lb_delta = 2;
  int lb_r = 1, lb_rho = 2, lb_k = 2, lb_budget = 1;
  double lb_threshold = -1.0;
  std::string lb_eps = "0.05";
  auto* lb = app.add_subcommand("lowerbound", "gadget instances and adversary trials");
  add_common(lb, lb_args);
  lb->add_option("--family", lb_family, "cycle | even_degree | general_degree");
  lb->add_option("--delta", lb_delta, "degree (families 2-3)");
  lb->add_option("--r", lb_r, "gadget radius (families 1-2)");
  lb->add_option("--rho", lb_rho, "edge subgadget length (family 3)");
  lb->add_option("--k", lb_k, "gadget count / layers");
  lb->add_option("--budget", lb_budget, "round budget for the algorithm under test");
  lb->add_option("--algo", lb_algo, "luby_multi | fast | warmup");
  lb->add_option("--eps", lb_eps, "accuracy for fast/warmup");
  lb->add_option("--threshold", lb_threshold, "required mean pair-failure frequency");

  // martingale
  CommonArgs mc_args;
  std::string mc_kind = "lower", mc_process = "bernoulli";
  std::int64_t mc_t = 1000;
  double mc_p = 1.0 / 6.0;
  auto* mc = app.add_subcommand("martingale", "Monte-Carlo tail bound checks");
  add_common(mc, mc_args);
  mc->add_option("--kind", mc_kind, "upper | lower");
  mc->add_option("--process", mc_process, "bernoulli | zero | alternating");
  mc->add_option("--t", mc_t, "steps per trajectory");
  mc->add_option("--p", mc_p, "step probability");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      auto cfg = base_config(gen_args, "generate");
      if (gen->count("--type")) cfg.generator = gen_type;
      if (cfg.generator.empty()) cfg.generator = gen_type;
      if (gen->count("--n")) cfg.n = gen_n;
      if (gen->count("--delta")) cfg.delta = gen_delta;
      return run(cfg, gen_args, "generate");
    }
    if (val->parsed()) {
      auto cfg = base_config(val_args, "validate");
      if (!val_file.empty()) cfg.graph_file = val_file;
      return run(cfg, val_args, "validate");
    }
    if (luby->parsed()) {
      auto cfg = base_config(luby_args, luby_tv ? "tv" : (luby_rounds > 1 ? "preservation" : "luby"));
      if (!luby_file.empty()) cfg.graph_file = luby_file;
      if (!luby_type.empty()) cfg.generator = luby_type;
      if (luby->count("--n")) cfg.n = luby_n;
      if (luby->count("--delta")) cfg.delta = luby_delta;
      cfg.rounds = luby_rounds;
      cfg.c_prime = luby_cprime;
      cfg.tv_samples = luby_samples;
      if (luby->count("--threshold")) cfg.threshold = luby_threshold;
      return run(cfg, luby_args, cfg.kind);
    }
    if (wu->parsed()) {
      auto cfg = base_config(wu_args, "warmup");
      if (!wu_file.empty()) cfg.graph_file = wu_file;
      if (!wu_type.empty()) cfg.generator = wu_type;
      if (wu->count("--n")) cfg.n = wu_n;
      if (wu->count("--delta")) cfg.delta = wu_delta;
      if (wu->count("--eps")) cfg.eps = wu_eps;
      cfg.hyperedge_cap = wu_cap;
      if (wu_phase_limit >= 0) cfg.phase_limit = wu_phase_limit;
      return run(cfg, wu_args, "warmup");
    }
    if (fast->parsed()) {
      auto cfg = base_config(fast_args, "fast");
      if (!fast_file.empty()) cfg.graph_file = fast_file;
      if (!fast_type.empty()) cfg.generator = fast_type;
      if (fast->count("--n")) cfg.n = fast_n;
      if (fast->count("--delta")) cfg.delta = fast_delta;
      if (fast->count("--eps")) cfg.eps = fast_eps;
      cfg.c_prime = fast_cprime;
      if (fast->count("--threshold")) cfg.threshold = fast_threshold;
      return run(cfg, fast_args, "fast");
    }
    if (na->parsed()) {
      auto cfg = base_config(na_args, "node_avg");
      if (!na_file.empty()) cfg.graph_file = na_file;
      if (!na_type.empty()) cfg.generator = na_type;
      if (na->count("--n")) cfg.n = na_n;
      if (na->count("--delta")) cfg.delta = na_delta;
      return run(cfg, na_args, "node_avg");
    }
    if (lb->parsed()) {
      auto cfg = base_config(lb_args, "lowerbound");
      if (lb->count("--family")) cfg.family = lb_family;
      if (lb->count("--delta")) cfg.delta = lb_delta;
      if (lb->count("--r")) cfg.lb_r = lb_r;
      if (lb->count("--rho")) cfg.lb_rho = lb_rho;
      if (lb->count("--k")) cfg.lb_k = lb_k;
      if (lb->count("--budget")) cfg.round_budget = lb_budget;
      if (lb->count("--algo")) cfg.algo = lb_algo;
      if (lb->count("--eps")) cfg.eps = lb_eps;
      if (lb->count("--threshold")) cfg.threshold = lb_threshold;
      return run(cfg, lb_args, "lowerbound");
    }
    if (mc->parsed()) {
      auto cfg = base_config(mc_args, "martingale");
      if (mc->count("--kind")) cfg.mc_kind = mc_kind;
      if (mc->count("--process")) cfg.mc_process = mc_process;
      if (mc->count("--t")) cfg.mc_t = mc_t;
      if (mc->count("--p")) cfg.mc_p = mc_p;
      return run(cfg, mc_args, "martingale");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 2;
}
