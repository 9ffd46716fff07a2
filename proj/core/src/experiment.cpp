#include "regmatch/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "regmatch/fast.hpp"
#include "regmatch/lowerbound.hpp"
#include "regmatch/luby.hpp"
#include "regmatch/oracle.hpp"
#include "regmatch/rng.hpp"
#include "regmatch/warmup.hpp"

namespace regmatch {

const char* const kVersion = "regmatch 0.1.0";
const char* const kSubstitutionNotes[2] = {
    "fractional hypergraph matching: sequential raise-and-freeze scheme with a saturating pass",
    "maximal-matching completer: repeated one-round Luby on the residual graph",
};

void parallel_trials(std::int64_t trials, std::int32_t workers,
                     const std::function<void(std::int64_t)>& fn) {
  workers = std::max<std::int32_t>(1, std::min<std::int64_t>(workers, trials));
  if (workers == 1) {
    for (std::int64_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (std::int32_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::int64_t t = next.fetch_add(1);
        if (t >= trials) return;
        try {
          fn(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void atomic_write_file(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("rename failed: " + path);
  }
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

void apply_kv(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "kind") cfg.kind = value;
  else if (key == "graph_file") cfg.graph_file = value;
  else if (key == "generator") cfg.generator = value;
  else if (key == "n") cfg.n = std::stoll(value);
  else if (key == "delta") cfg.delta = std::stoll(value);
  else if (key == "eps") cfg.eps = value;
  else if (key == "rounds") cfg.rounds = std::stoi(value);
  else if (key == "c_prime") cfg.c_prime = std::stoi(value);
  else if (key == "hyperedge_cap") cfg.hyperedge_cap = std::stoll(value);
  else if (key == "phase_limit") cfg.phase_limit = std::stoll(value);
  else if (key == "tv_samples") cfg.tv_samples = std::stoll(value);
  else if (key == "family") cfg.family = value;
  else if (key == "lb_r" || key == "r") cfg.lb_r = std::stoi(value);
  else if (key == "lb_rho" || key == "rho") cfg.lb_rho = std::stoi(value);
  else if (key == "lb_k" || key == "k") cfg.lb_k = std::stoi(value);
  else if (key == "round_budget") cfg.round_budget = std::stoi(value);
  else if (key == "algo") cfg.algo = value;
  else if (key == "mc_kind") cfg.mc_kind = value;
  else if (key == "mc_process") cfg.mc_process = value;
  else if (key == "mc_t") cfg.mc_t = std::stoll(value);
  else if (key == "mc_p") cfg.mc_p = std::stod(value);
  else if (key == "trials") cfg.trials = std::stoll(value);
  else if (key == "seed") cfg.seed = std::stoull(value);
  else if (key == "out_dir") cfg.out_dir = value;
  else if (key == "workers") cfg.workers = std::stoi(value);
  else if (key == "threshold") cfg.threshold = std::stod(value);
  else throw std::runtime_error("unknown config key: " + key);
}

}  // namespace

ExperimentConfig load_config_file(const std::string& path) {
  ExperimentConfig cfg;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json j;
    in >> j;
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string value;
      if (it->is_string()) value = it->get<std::string>();
      else value = it->dump();
      apply_kv(cfg, it.key(), value);
    }
    return cfg;
  }

  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad config line: " + line);
    apply_kv(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

Graph graph_from_config(const ExperimentConfig& cfg) {
  if (!cfg.graph_file.empty()) return load_edge_list_file(cfg.graph_file);
  if (!cfg.seed) throw std::invalid_argument("seed is required");
  std::uint64_t gseed = Rng::derive(*cfg.seed, stream::kPermutation, 0x61);
  if (cfg.generator == "bipartite") {
    return gen_regular_bipartite(static_cast<NodeId>(cfg.n), static_cast<NodeId>(cfg.delta),
                                 gseed);
  }
  if (cfg.generator == "general") {
    return gen_regular_general(static_cast<NodeId>(cfg.n), static_cast<NodeId>(cfg.delta),
                               gseed);
  }
  throw std::invalid_argument("config needs graph_file or generator=bipartite|general");
}

double shifted_martingale_upper_bound(double lambda, double p_sum, double m) {
  if (!(lambda > p_sum)) throw std::invalid_argument("need lambda > P");
  double gap = lambda - p_sum;
  return std::exp(-(gap * gap) / (8.0 * m * p_sum + 2.0 * m * gap / 3.0));
}

double shifted_martingale_lower_bound(double lambda, double pl_sum, double ph_sum, double m) {
  if (!(lambda < pl_sum)) throw std::invalid_argument("need lambda < P_low");
  double gap = pl_sum - lambda;
  return std::exp(-(gap * gap) / (8.0 * m * ph_sum + 2.0 * m * gap / 3.0));
}

MartingaleCheckResult mc_martingale_check(const std::string& kind, const std::string& process,
                                          std::int64_t t, double p, std::int64_t trials,
                                          std::uint64_t seed) {
  if (kind != "upper" && kind != "lower") throw std::invalid_argument("kind: upper|lower");
  if (t <= 0 || trials <= 0) throw std::invalid_argument("t and trials must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0,1]");

  // Declared per-step conditional-mean bounds.
  auto step_mean = [&](std::int64_t i) -> double {
    if (process == "bernoulli") return p;
    if (process == "zero") return 0.0;
    if (process == "alternating") return i % 2 == 0 ? p : 0.0;
    throw std::invalid_argument("process: bernoulli|zero|alternating");
  };
  // Declared lower bounds: only the i.i.d. process promises one.
  auto step_low = [&](std::int64_t) -> double {
    return process == "bernoulli" ? p : 0.0;
  };

  MartingaleCheckResult result;
  result.kind = kind;
  result.process = process;
  result.t = t;
  result.trials = trials;
  for (std::int64_t i = 0; i < t; ++i) {
    double mean = step_mean(i);
    result.p_high_sum += mean;
    result.p_low_sum += step_low(i);
    if (mean < step_low(i) - 1e-12 || mean > 1.0) {
      throw std::invalid_argument("process breaches its declared bounds");
    }
  }

  std::vector<double> sums(trials, 0.0);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    Rng rng(Rng::derive(seed, stream::kProcess, trial));
    double s = 0.0;
    for (std::int64_t i = 0; i < t; ++i) {
      double x = rng.unit() < step_mean(i) ? 1.0 : 0.0;
      if (x < 0.0 || x > 1.0) throw std::invalid_argument("sampled step out of [0,M]");
      s += x;
    }
    sums[trial] = s;
  }

  constexpr int kGrid = 8;
  const double m = 1.0;
  for (int j = 1; j <= kGrid; ++j) {
    MartingaleGridRow row;
    double freq = 0.0;
    if (kind == "upper") {
      row.lambda = result.p_high_sum +
                   j * (static_cast<double>(t) * m - result.p_high_sum) / (kGrid + 1);
      if (!(row.lambda > result.p_high_sum)) continue;
      row.bound = shifted_martingale_upper_bound(row.lambda, result.p_high_sum, m);
      for (double s : sums) freq += s >= row.lambda ? 1.0 : 0.0;
    } else {
      if (result.p_low_sum <= 0.0) break;  // no valid lambda below P_low = 0
      row.lambda = result.p_low_sum * (1.0 - static_cast<double>(j) / (kGrid + 1));
      row.bound =
          shifted_martingale_lower_bound(row.lambda, result.p_low_sum, result.p_high_sum, m);
      for (double s : sums) freq += s <= row.lambda ? 1.0 : 0.0;
    }
    freq /= static_cast<double>(trials);
    row.empirical = freq;
    row.stderr_est =
        std::sqrt(std::max(freq * (1.0 - freq), 1.0 / static_cast<double>(trials)) /
                  static_cast<double>(trials));
    row.violation = freq > row.bound + 3.0 * row.stderr_est;
    if (row.violation) result.any_violation = true;
    result.grid.push_back(row);
  }
  return result;
}

namespace {

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["kind"] = cfg.kind;
  j["graph_file"] = cfg.graph_file;
  j["generator"] = cfg.generator;
  j["n"] = cfg.n;
  j["delta"] = cfg.delta;
  j["eps"] = cfg.eps;
  j["rounds"] = cfg.rounds;
  j["c_prime"] = cfg.c_prime;
  j["hyperedge_cap"] = cfg.hyperedge_cap;
  if (cfg.phase_limit) j["phase_limit"] = *cfg.phase_limit;
  j["tv_samples"] = cfg.tv_samples;
  j["family"] = cfg.family;
  j["lb_r"] = cfg.lb_r;
  j["lb_rho"] = cfg.lb_rho;
  j["lb_k"] = cfg.lb_k;
  j["round_budget"] = cfg.round_budget;
  j["algo"] = cfg.algo;
  j["mc_kind"] = cfg.mc_kind;
  j["mc_process"] = cfg.mc_process;
  j["mc_t"] = cfg.mc_t;
  j["mc_p"] = cfg.mc_p;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed ? nlohmann::json(*cfg.seed) : nlohmann::json();
  j["out_dir"] = cfg.out_dir;
  j["workers"] = cfg.workers;
  j["threshold"] = cfg.threshold;
  return j;
}

void add_aggregates(ExperimentReport& report) {
  std::map<std::string, std::vector<double>> columns;
  for (const auto& rec : report.records) {
    for (auto it = rec.begin(); it != rec.end(); ++it) {
      if (it->is_number()) columns[it.key()].push_back(it->get<double>());
    }
  }
  nlohmann::json agg;
  for (const auto& [key, values] : columns) {
    double mean = 0.0;
    double lo = values.front(), hi = values.front();
    for (double v : values) {
      mean += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    agg[key] = {{"mean", mean}, {"stddev", std::sqrt(var)}, {"min", lo}, {"max", hi},
                {"count", values.size()}};
  }
  report.aggregates["columns"] = std::move(agg);
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, std::int64_t trial) {
  return Rng::derive(*cfg.seed, stream::kTrial, trial);
}

void run_validate_like(const ExperimentConfig& cfg, ExperimentReport& report, bool save) {
  Graph g = graph_from_config(cfg);
  DegreeReport rep = validate(g);
  nlohmann::json rec;
  rec["trial"] = 0;
  rec["n"] = g.node_count();
  rec["m"] = g.edge_count();
  rec["min_degree"] = rep.min_degree;
  rec["max_degree"] = rep.max_degree;
  rec["mean_degree"] = rep.mean_degree.to_double();
  rec["is_regular"] = rep.is_regular;
  if (rep.regular_degree) rec["regular_degree"] = *rep.regular_degree;
  rec["is_bipartite"] = rep.is_bipartite;
  report.records.push_back(rec);
  if (save) {
    if (cfg.out_dir.empty()) throw std::invalid_argument("generate requires out_dir");
    std::filesystem::create_directories(cfg.out_dir);
    std::ostringstream body;
    save_edge_list(g, body);
    atomic_write_file(cfg.out_dir + "/graph.edges", body.str());
  }
  nlohmann::json hist;
  for (const auto& [deg, count] : rep.degree_histogram) hist[std::to_string(deg)] = count;
  report.aggregates["degree_histogram"] = hist;
}

void run_luby_kind(const ExperimentConfig& cfg, ExperimentReport& report) {
  Graph g = graph_from_config(cfg);
  std::vector<nlohmann::json> recs(cfg.trials);
  std::vector<std::vector<std::int64_t>> edge_hits(cfg.trials);
  parallel_trials(cfg.trials, cfg.workers, [&](std::int64_t t) {
    Matching m = luby_round_distributed(g, cfg.c_prime, trial_seed(cfg, t));
    nlohmann::json rec;
    rec["trial"] = t;
    rec["seed"] = trial_seed(cfg, t);
    rec["matched_edges"] = m.size();
    rec["matched_nodes"] = 2 * m.size();
    recs[t] = rec;
    if (g.edge_count() <= 64) {
      std::vector<std::int64_t> hits;
      for (std::int64_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edges()[e];
        hits.push_back(m.partner[ed.u] == ed.v ? 1 : 0);
      }
      edge_hits[t] = std::move(hits);
    }
  });
  report.records = std::move(recs);
  if (g.edge_count() <= 64 && cfg.trials > 0) {
    std::vector<double> freq(g.edge_count(), 0.0);
    for (const auto& hits : edge_hits) {
      for (std::size_t e = 0; e < hits.size(); ++e) freq[e] += static_cast<double>(hits[e]);
    }
    for (double& f : freq) f /= static_cast<double>(cfg.trials);
    report.aggregates["edge_match_frequency"] = freq;
  }
}

void run_preservation(const ExperimentConfig& cfg, ExperimentReport& report) {
  Graph g = graph_from_config(cfg);
  std::vector<nlohmann::json> recs(cfg.trials);
  std::vector<nlohmann::json> details(cfg.trials);
  parallel_trials(cfg.trials, cfg.workers, [&](std::int64_t t) {
    MultiRoundResult res = multi_round_luby(g, cfg.rounds, trial_seed(cfg, t));
    nlohmann::json rec;
    rec["trial"] = t;
    rec["seed"] = trial_seed(cfg, t);
    rec["matched_nodes"] = 2 * res.matching.size();
    rec["unmatched_fraction"] =
        g.node_count() == 0
            ? 0.0
            : 1.0 - 2.0 * static_cast<double>(res.matching.size()) / g.node_count();
    recs[t] = rec;
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& snap : res.snapshots) {
      nlohmann::json s;
      s["round"] = snap.round_index;
      s["residual_nodes"] = snap.residual_node_count;
      s["residual_edges"] = snap.residual_edge_count;
      s["matched_nodes"] = snap.matched_this_round;
      nlohmann::json hist;
      for (const auto& [deg, count] : snap.degree_histogram) hist[std::to_string(deg)] = count;
      s["degree_histogram"] = hist;
      rounds.push_back(s);
    }
    details[t] = rounds;
  });
  report.records = std::move(recs);
  report.aggregates["per_round"] = details;
}

void run_tv(const ExperimentConfig& cfg, ExperimentReport& report) {
  Graph g = graph_from_config(cfg);
  std::vector<nlohmann::json> recs(cfg.trials);
  parallel_trials(cfg.trials, cfg.workers, [&](std::int64_t t) {
    double tv = tv_distance_estimate(g, cfg.tv_samples, cfg.c_prime, trial_seed(cfg, t));
    recs[t] = {{"trial", t}, {"seed", trial_seed(cfg, t)}, {"tv_estimate", tv}};
  });
  report.records = std::move(recs);
  if (cfg.threshold >= 0.0) {
    for (const auto& rec : report.records) {
      if (rec["tv_estimate"].get<double>() > cfg.threshold) report.passed = false;
    }
  }
}

void run_warmup(const ExperimentConfig& cfg, ExperimentReport& report) {
  Graph g = graph_from_config(cfg);
  Rational eps = Rational::parse(cfg.eps);
  std::int64_t opt = -1;
  if (try_two_color(g)) {
    opt = max_matching_bipartite(g).matching.size();
  } else if (g.node_count() <= 64) {
    opt = max_matching_exact_small(g);
  }
  std::vector<nlohmann::json> recs(cfg.trials);
  std::atomic<bool> all_ok{true};
  parallel_trials(cfg.trials, cfg.workers, [&](std::int64_t t) {
    WarmupOptions opts;
    opts.internal_eps = eps;  // eps is the driver accuracy for experiments
    opts.hyperedge_cap = cfg.hyperedge_cap;
    opts.phase_limit = cfg.phase_limit;
    WarmupResult res = warmup_full(g, eps, trial_seed(cfg, t), opts);
    nlohmann::json rec;
    rec["trial"] = t;
    rec["seed"] = trial_seed(cfg, t);
    rec["matching_size"] = res.matching.size();
    rec["phases_run"] = res.inner.phases_run;
    rec["exhausted_paths"] = res.inner.exhausted_paths;
    rec["cap_aborted"] = res.inner.cap_aborted;
    rec["out_of_regime"] = res.out_of_regime;
    if (opt >= 0) {
      rec["opt"] = opt;
      double slack = eps.to_double() * g.node_count();
      bool ok = static_cast<double>(res.matching.size()) >= static_cast<double>(opt) - slack;
      rec["bound_ok"] = ok;
      if (!ok) all_ok = false;
    }
    recs[t] = rec;
  });
  report.records = std::move(recs);
  report.passed = all_ok.load();
}

void run_fast(const ExperimentConfig& cfg, ExperimentReport& report) {
  Graph g = graph_from_config(cfg);
  double eps = std::stod(cfg.eps);
  std::vector<nlohmann::json> recs(cfg.trials);
  std::atomic<std::int64_t> ok_count{0};
  parallel_trials(cfg.trials, cfg.workers, [&](std::int64_t t) {
    FastOptions fo;
    fo.c_prime = cfg.c_prime;
    FastResult res = approx_match_fast(g, eps, trial_seed(cfg, t), fo);
    bool ok = res.unmatched_fraction <= eps;
    if (ok) ok_count.fetch_add(1);
    recs[t] = {{"trial", t},
               {"seed", trial_seed(cfg, t)},
               {"rounds", res.rounds},
               {"matching_size", res.matching.size()},
               {"unmatched_fraction", res.unmatched_fraction},
               {"within_eps", ok},
               {"out_of_regime", res.out_of_regime}};
  });
  report.records = std::move(recs);
  report.aggregates["within_eps_count"] = ok_count.load();
  double need = cfg.threshold >= 0.0 ? cfg.threshold : 1.0;
  report.passed =
      static_cast<double>(ok_count.load()) >= need * static_cast<double>(cfg.trials) - 1e-9;
}

void run_node_avg(const ExperimentConfig& cfg, ExperimentReport& report) {
  Graph g = graph_from_config(cfg);
  std::vector<nlohmann::json> recs(cfg.trials);
  std::atomic<bool> all_ok{true};
  parallel_trials(cfg.trials, cfg.workers, [&](std::int64_t t) {
    NodeAvgResult res = maximal_match_node_avg(g, trial_seed(cfg, t), cfg.c_prime);
    bool maximal = is_maximal(g, res.matching);
    if (!maximal) all_ok = false;
    recs[t] = {{"trial", t},
               {"seed", trial_seed(cfg, t)},
               {"node_averaged_time", res.avg.to_double()},
               {"phase1_rounds", res.phase1_rounds},
               {"total_rounds", res.total_rounds},
               {"matching_size", res.matching.size()},
               {"maximal", maximal}};
  });
  report.records = std::move(recs);
  report.passed = all_ok.load();
}

void run_lowerbound(const ExperimentConfig& cfg, ExperimentReport& report) {
  LowerBoundInstance inst;
  std::uint64_t build_seed = Rng::derive(*cfg.seed, stream::kGadgetOrient, 0xb);
  if (cfg.family == "cycle") {
    inst = build_cycle_instance(cfg.lb_r, cfg.lb_k, build_seed);
  } else if (cfg.family == "even_degree") {
    inst = build_even_degree_instance(static_cast<std::int32_t>(cfg.delta), cfg.lb_r, cfg.lb_k,
                                      build_seed);
  } else if (cfg.family == "general_degree") {
    inst = build_general_degree_instance(static_cast<std::int32_t>(cfg.delta), cfg.lb_rho,
                                         cfg.lb_k, build_seed);
  } else {
    throw std::invalid_argument("family: cycle|even_degree|general_degree");
  }
  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    export_instance(inst, cfg.out_dir + "/instance.edges", cfg.out_dir + "/instance.json");
  }

  AdversaryAlgo algo;
  if (cfg.algo == "luby_multi") algo = AdversaryAlgo::LubyMulti;
  else if (cfg.algo == "fast") algo = AdversaryAlgo::Fast;
  else if (cfg.algo == "warmup") algo = AdversaryAlgo::Warmup;
  else throw std::invalid_argument("algo: luby_multi|fast|warmup");

  AdversaryReport rep = adversary_trial(inst, algo, cfg.round_budget,
                                        static_cast<std::int32_t>(cfg.trials), *cfg.seed);
  for (std::size_t t = 0; t < rep.trials.size(); ++t) {
    report.records.push_back({{"trial", t},
                              {"seed", Rng::derive(*cfg.seed, stream::kTrial, t)},
                              {"unmatched", rep.trials[t].unmatched},
                              {"pair_failure_fraction", rep.trials[t].pair_failure_fraction},
                              {"ratio", rep.trials[t].ratio}});
  }
  report.aggregates["opt"] = rep.opt;
  report.aggregates["mean_pair_failure"] = rep.mean_pair_failure;
  report.aggregates["mean_unmatched"] = rep.mean_unmatched;
  if (cfg.threshold >= 0.0) report.passed = rep.mean_pair_failure >= cfg.threshold;
}

void run_martingale(const ExperimentConfig& cfg, ExperimentReport& report) {
  MartingaleCheckResult res =
      mc_martingale_check(cfg.mc_kind, cfg.mc_process, cfg.mc_t, cfg.mc_p, cfg.trials, *cfg.seed);
  for (std::size_t i = 0; i < res.grid.size(); ++i) {
    report.records.push_back({{"trial", i},
                              {"lambda", res.grid[i].lambda},
                              {"bound", res.grid[i].bound},
                              {"empirical", res.grid[i].empirical},
                              {"stderr", res.grid[i].stderr_est},
                              {"violation", res.grid[i].violation}});
  }
  report.aggregates["p_low_sum"] = res.p_low_sum;
  report.aggregates["p_high_sum"] = res.p_high_sum;
  report.passed = !res.any_violation;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (!cfg.seed) throw std::invalid_argument("seed is required (no wall-clock default)");
  if (cfg.trials <= 0) throw std::invalid_argument("trials must be positive");

  ExperimentReport report;
  report.config_echo = config_to_json(cfg);
  report.provenance["version"] = kVersion;
  report.provenance["substitutions"] = {kSubstitutionNotes[0], kSubstitutionNotes[1]};

  if (cfg.kind == "validate") run_validate_like(cfg, report, false);
  else if (cfg.kind == "generate") run_validate_like(cfg, report, true);
  else if (cfg.kind == "luby") run_luby_kind(cfg, report);
  else if (cfg.kind == "preservation") run_preservation(cfg, report);
  else if (cfg.kind == "tv") run_tv(cfg, report);
  else if (cfg.kind == "warmup") run_warmup(cfg, report);
  else if (cfg.kind == "fast") run_fast(cfg, report);
  else if (cfg.kind == "node_avg") run_node_avg(cfg, report);
  else if (cfg.kind == "lowerbound") run_lowerbound(cfg, report);
  else if (cfg.kind == "martingale") run_martingale(cfg, report);
  else throw std::invalid_argument("unknown experiment kind: " + cfg.kind);

  add_aggregates(report);
  return report;
}

void write_report(const ExperimentReport& report, const std::string& out_dir,
                  const std::string& name) {
  std::filesystem::create_directories(out_dir);

  // CSV: the column set is the union of record keys, first-seen order.
  std::vector<std::string> columns;
  for (const auto& rec : report.records) {
    for (auto it = rec.begin(); it != rec.end(); ++it) {
      if (std::find(columns.begin(), columns.end(), it.key()) == columns.end()) {
        columns.push_back(it.key());
      }
    }
  }
  std::ostringstream csv;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    csv << (c ? "," : "") << columns[c];
  }
  csv << '\n';
  for (const auto& rec : report.records) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) csv << ',';
      if (rec.contains(columns[c])) {
        const auto& v = rec[columns[c]];
        if (v.is_string()) csv << v.get<std::string>();
        else csv << v.dump();
      }
    }
    csv << '\n';
  }
  atomic_write_file(out_dir + "/" + name + ".csv", csv.str());

  nlohmann::json j;
  j["config"] = report.config_echo;
  j["aggregates"] = report.aggregates;
  j["provenance"] = report.provenance;
  j["passed"] = report.passed;
  j["record_count"] = report.records.size();
  atomic_write_file(out_dir + "/" + name + ".json", j.dump(2) + "\n");
}

}  // namespace regmatch
