// Acceptance suite: one self-contained check per criterion, each printing a
// single PASS/FAIL line. Run with no arguments for all criteria or pass the
// criterion numbers to run a subset. Exit status is nonzero when any
// selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "regmatch/experiment.hpp"
#include "regmatch/fast.hpp"
#include "regmatch/hypergraph.hpp"
#include "regmatch/lowerbound.hpp"
#include "regmatch/luby.hpp"
#include "regmatch/oracle.hpp"
#include "regmatch/rng.hpp"
#include "regmatch/warmup.hpp"

using namespace regmatch;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// ---------- criterion 1: oracle equivalence ----------

// Independent brute force: DP over (left index, right availability mask).
struct BruteDp {
  int a = 0, b = 0;
  std::vector<std::uint32_t> rows;
  std::vector<std::int8_t> memo;  // a * 2^b

  int solve() {
    memo.assign(static_cast<std::size_t>(a) << b, -1);
    return best(0, (1u << b) - 1);
  }
  int best(int i, std::uint32_t avail) {
    if (i == a) return 0;
    std::int8_t& slot = memo[(static_cast<std::size_t>(i) << b) | avail];
    if (slot >= 0) return slot;
    int res = best(i + 1, avail);
    std::uint32_t options = rows[i] & avail;
    while (options) {
      int r = __builtin_ctz(options);
      options &= options - 1;
      res = std::max(res, 1 + best(i + 1, avail & ~(1u << r)));
    }
    slot = static_cast<std::int8_t>(res);
    return res;
  }
};

bool connected_bipartite(int a, int b, const std::vector<std::uint32_t>& rows) {
  // Every node needs degree >= 1 first.
  std::uint32_t col_cover = 0;
  for (int i = 0; i < a; ++i) {
    if (rows[i] == 0) return false;
    col_cover |= rows[i];
  }
  if (col_cover != (1u << b) - 1) return false;
  // Alternating reachability from left node 0.
  std::uint32_t left_seen = 1, right_seen = 0;
  for (;;) {
    std::uint32_t right_next = right_seen;
    for (int i = 0; i < a; ++i) {
      if (left_seen & (1u << i)) right_next |= rows[i];
    }
    std::uint32_t left_next = left_seen;
    for (int i = 0; i < a; ++i) {
      if (!(left_next & (1u << i)) && (rows[i] & right_next)) left_next |= 1u << i;
    }
    if (left_next == left_seen && right_next == right_seen) break;
    left_seen = left_next;
    right_seen = right_next;
  }
  return left_seen == (1u << a) - 1 && right_seen == (1u << b) - 1;
}

Outcome criterion1() {
  std::int64_t tested = 0;
  Rng relabel_rng(20240518, 77);
  for (int total = 2; total <= 10; ++total) {
    for (int a = 1; a <= total / 2; ++a) {
      const int b = total - a;
      const std::uint32_t row_max = (1u << b) - 1;
      // Non-decreasing nonzero rows: every connected bipartite graph up to
      // relabeling of the smaller part; each is also retested under a
      // random node relabeling.
      std::vector<std::uint32_t> rows(a, 1);
      for (;;) {
        if (connected_bipartite(a, b, rows)) {
          BruteDp dp{a, b, rows, {}};
          const int want = dp.solve();

          for (int pass = 0; pass < 2; ++pass) {
            std::vector<NodeId> node_map(total);
            for (int v = 0; v < total; ++v) node_map[v] = v;
            if (pass == 1) relabel_rng.shuffle(node_map);

            std::vector<Edge> edges;
            std::vector<Side> sides(total);
            for (int i = 0; i < a; ++i) sides[node_map[i]] = Side::L;
            for (int r = 0; r < b; ++r) sides[node_map[a + r]] = Side::R;
            for (int i = 0; i < a; ++i) {
              for (int r = 0; r < b; ++r) {
                if (rows[i] & (1u << r)) edges.push_back({node_map[i], node_map[a + r]});
              }
            }
            Graph g(total, std::move(edges), std::move(sides));
            if (max_matching_bipartite(g).matching.size() != want) {
              char buf[128];
              std::snprintf(buf, sizeof(buf), "mismatch at a=%d b=%d after %lld graphs", a,
                            b, static_cast<long long>(tested));
              return {false, buf};
            }
            ++tested;
          }
        }
        // Next non-decreasing row vector.
        int pos = a - 1;
        while (pos >= 0 && rows[pos] == row_max) --pos;
        if (pos < 0) break;
        std::uint32_t next = rows[pos] + 1;
        for (int i = pos; i < a; ++i) rows[i] = next;
      }
    }
  }
  return {true, std::to_string(tested) + " labeled instances, all equal to brute force"};
}

// ---------- criterion 2: Luby distributional equivalence ----------

Outcome criterion2() {
  struct Case {
    const char* name;
    Graph g;
  };
  std::vector<Case> cases;
  cases.push_back({"P_3", Graph(3, {{0, 1}, {1, 2}})});
  cases.push_back({"C_4", Graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})});
  cases.push_back({"C_5", Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}})});
  cases.push_back({"K_1_3", Graph(4, {{0, 1}, {0, 2}, {0, 3}})});

  std::string detail;
  for (const Case& c : cases) {
    double tv = tv_distance_estimate(c.g, 100000, 2, 0xACCE2);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s=%.4f ", c.name, tv);
    detail += buf;
    if (tv > 0.02) return {false, detail + "(exceeds 0.02)"};
  }
  return {true, detail};
}

// ---------- criterion 3: constant-fraction matching ----------

Outcome criterion3() {
  Graph g = gen_regular_bipartite(10000, 16, 0xACCE3);
  const double n = static_cast<double>(g.node_count());
  double worst = 1.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Matching m = luby_round_distributed(g, 2, Rng::derive(0xACCE3, 1, s));
    double matched_nodes = 2.0 * static_cast<double>(m.size());
    worst = std::min(worst, matched_nodes / n);
    if (matched_nodes < n / 288.0) {
      return {false, "seed " + std::to_string(s) + " matched only " +
                         std::to_string(matched_nodes) + " nodes"};
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "min matched fraction %.4f (bound 1/288 = 0.0035)", worst);
  return {true, buf};
}

// ---------- criterion 4: degree halving ----------

Outcome criterion4() {
  Graph g = gen_regular_bipartite(10000, 512, 0xACCE4);
  const double lo = 256.0 * 0.85, hi = 256.0 * 1.15;
  double worst = 1.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    MultiRoundResult res = multi_round_luby(g, 1, Rng::derive(0xACCE4, 1, s));
    std::int64_t in = 0, total = 0;
    for (const auto& [deg, count] : res.snapshots[0].degree_histogram) {
      total += count;
      if (deg >= lo && deg <= hi) in += count;
    }
    double frac = total == 0 ? 1.0 : static_cast<double>(in) / static_cast<double>(total);
    worst = std::min(worst, frac);
    if (frac < 0.95) {
      return {false,
              "seed " + std::to_string(s) + " in-range fraction " + std::to_string(frac)};
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "min survivor fraction in 256*(1±0.15): %.4f", worst);
  return {true, buf};
}

// ---------- criterion 5: fast matcher ----------

Outcome criterion5() {
  Graph g = gen_regular_bipartite(10000, 256, 0xACCE5);
  int ok = 0;
  double worst = 0.0;
  std::int32_t rounds = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    FastResult res = approx_match_fast(g, 0.05, Rng::derive(0xACCE5, 1, s));
    rounds = res.rounds;
    worst = std::max(worst, res.unmatched_fraction);
    if (res.unmatched_fraction <= 0.05) ++ok;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d/50 seeds within eps (need 45), %d rounds, worst unmatched %.4f "
                "[out-of-regime empirical substitute]",
                ok, rounds, worst);
  return {ok >= 45 && rounds == 44, buf};
}

// ---------- criterion 6: warmup end to end ----------

Outcome criterion6() {
  Graph g = gen_regular_bipartite(250, 4, 0xACCE6);
  const std::int64_t opt = max_matching_bipartite(g).matching.size();
  const double slack = 0.3 * static_cast<double>(g.node_count());
  std::int64_t worst = opt;
  for (std::uint64_t s = 0; s < 10; ++s) {
    WarmupOptions opts;
    opts.internal_eps = Rational(3, 10);  // the criterion pins the driver accuracy
    WarmupResult res = warmup_full(g, Rational(3, 10), Rng::derive(0xACCE6, 1, s), opts);
    if (res.inner.cap_aborted) return {false, "hyperedge cap triggered"};
    worst = std::min(worst, res.matching.size());
    if (static_cast<double>(res.matching.size()) < static_cast<double>(opt) - slack) {
      return {false, "seed " + std::to_string(s) + " found " +
                         std::to_string(res.matching.size()) + " < OPT - 0.3n"};
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "OPT=%lld, min |M|=%lld, bound %.1f, cap untouched",
                static_cast<long long>(opt), static_cast<long long>(worst),
                static_cast<double>(opt) - slack);
  return {true, buf};
}

// ---------- criterion 7: rounding disjointness ----------

Outcome criterion7() {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed, 0xACCE7);
    Hypergraph h;
    h.node_count = 4 + static_cast<NodeId>(rng.below(12));
    h.f_bound = 2 + static_cast<NodeId>(rng.below(4));
    int edges = 1 + static_cast<int>(rng.below(16));
    for (int e = 0; e < edges; ++e) {
      int size = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                         std::min<NodeId>(h.f_bound, h.node_count) - 1)));
      std::vector<NodeId> pool(h.node_count);
      for (NodeId v = 0; v < h.node_count; ++v) pool[v] = v;
      rng.shuffle(pool);
      pool.resize(size);
      h.hyperedges.push_back(pool);
    }
    // Random fractional weights scaled into the node constraints.
    FractionalMatching x;
    x.weight.assign(h.hyperedges.size(), 0.0);
    for (std::size_t e = 0; e < h.hyperedges.size(); ++e) x.weight[e] = rng.unit();
    double worst = 1.0;
    for (double s : incident_weight(h, x)) worst = std::max(worst, s);
    for (double& w : x.weight) w /= worst;
    double tau = 0.02 + rng.unit() * 0.9;

    auto kept = round_fractional(h, x, tau, Rng::derive(seed, 3, 1));
    std::vector<char> used(h.node_count, 0);
    for (std::int32_t e : kept) {
      for (NodeId v : h.hyperedges[e]) {
        if (used[v]) return {false, "overlap at instance " + std::to_string(seed)};
        used[v] = 1;
      }
    }
  }
  return {true, "1000 random (hypergraph, x, tau) instances, all outputs vertex-disjoint"};
}

// ---------- criterion 8: node-averaged complexity ----------

Outcome criterion8() {
  std::string detail;
  double lo_mean = 1e18, hi_mean = 0.0;
  for (NodeId delta : {16, 64, 256}) {
    Graph g = gen_regular_bipartite(8192, delta, 0xACCE8 + delta);
    double sum = 0.0;
    for (std::uint64_t s = 0; s < 30; ++s) {
      NodeAvgResult res = maximal_match_node_avg(g, Rng::derive(0xACCE8, delta, s));
      if (!is_maximal(g, res.matching)) {
        return {false, "non-maximal output at delta " + std::to_string(delta)};
      }
      sum += res.avg.to_double();
    }
    double mean = sum / 30.0;
    lo_mean = std::min(lo_mean, mean);
    hi_mean = std::max(hi_mean, mean);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "D=%d avg=%.3f ", delta, mean);
    detail += buf;
  }
  double ratio = hi_mean / lo_mean;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "growth x%.3f (< 2)", ratio);
  detail += buf;
  return {ratio < 2.0, detail};
}

// ---------- criterion 9: gadget structure ----------

Outcome criterion9() {
  auto shape_ok = [](const LowerBoundInstance& inst, std::int64_t n, NodeId delta) {
    DegreeReport rep = validate(inst.graph);
    return inst.graph.node_count() == n && rep.is_regular && *rep.regular_degree == delta &&
           rep.is_bipartite;
  };
  std::int64_t structures = 0;
  for (auto [r, k] : std::vector<std::pair<int, int>>{{1, 2}, {3, 8}}) {
    if (!shape_ok(build_cycle_instance(r, k, 0xACCE9), std::int64_t(k) * (2 * r + 2), 2)) {
      return {false, "cycle family shape broken"};
    }
    ++structures;
    for (NodeId delta : {2, 4, 6}) {
      std::int64_t n = std::int64_t(k) * (2 * r + 2) * (2 * delta + 1);
      if (!shape_ok(build_even_degree_instance(delta, r, k, 0xACCE9), n, delta)) {
        return {false, "even-degree family shape broken"};
      }
      ++structures;
    }
    // Family 3 grid: rho = 2r, k rounded up to a multiple of 4.
    int rho = 2 * r, k3 = (k + 3) / 4 * 4;
    for (NodeId delta : {2, 3, 5}) {
      std::int64_t n = 4ll * k3 + 10ll * k3 * delta * rho;
      if (!shape_ok(build_general_degree_instance(delta, rho, k3, 0xACCE9), n, delta)) {
        return {false, "general-degree family shape broken"};
      }
      ++structures;
    }
  }
  for (std::int32_t d = 2; d <= 10000; ++d) {
    auto [x, y] = decompose_degree(d);
    if (3 * x + 2 * y != d || x < 0 || y < 0) {
      return {false, "decompose_degree wrong at " + std::to_string(d)};
    }
    if (d % 2 == 0 && (x != 0 || y != d / 2)) return {false, "even rule broken"};
    if (d % 2 == 1 && (x != 1 || y != (d - 3) / 2)) return {false, "odd rule broken"};
  }
  return {true,
          std::to_string(structures) + " instances validated, decompose exact on [2,10^4]"};
}

// ---------- criterion 10: adversary signal ----------

Outcome criterion10() {
  LowerBoundInstance inst = build_cycle_instance(3, 40, 0xACCEA);
  AdversaryReport rep = adversary_trial(inst, AdversaryAlgo::LubyMulti, 3, 200, 0xACCEA);
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "mean per-pair failure %.3f over 200 trials (needs >= 0.2; one-sided evidence)",
                rep.mean_pair_failure);
  return {rep.mean_pair_failure >= 0.2, buf};
}

// ---------- criterion 11: schedules ----------

Outcome criterion11() {
  const double eps = std::pow(2.0, -10.0 / 100000.0);
  ScheduleTable t = param_schedules(1 << 10, eps);
  const double base = std::pow(1024.0, -1.0 / 600.0);
  bool exact = std::abs(t.rows[0].alpha - base) < 1e-12 &&
               std::abs(t.rows[1].alpha - 11.0 * base) < 1e-12;
  char buf[160];
  std::snprintf(
      buf, sizeof(buf),
      "alpha_ok=%d delta_ok=%d bounds_violated=%d claim_rounds=%d alpha0/alpha1 exact=%d",
      t.alpha_ok, t.delta_ok, t.bounds_violated, t.claim_rounds, exact);
  return {t.alpha_ok && t.delta_ok && !t.bounds_violated && exact, buf};
}

// ---------- criterion 12: martingale bounds ----------

Outcome criterion12() {
  struct Probe {
    const char* kind;
    const char* process;
    double p;
  };
  std::vector<Probe> probes = {{"lower", "bernoulli", 1.0 / 6.0},
                               {"upper", "bernoulli", 1.0 / 6.0},
                               {"upper", "zero", 0.0},
                               {"lower", "zero", 0.0},
                               {"upper", "alternating", 0.3}};
  std::string detail;
  for (const Probe& probe : probes) {
    MartingaleCheckResult res =
        mc_martingale_check(probe.kind, probe.process, 1000, probe.p, 20000, 0xACCEC);
    detail += std::string(probe.process) + "/" + probe.kind + " ";
    if (res.any_violation) {
      return {false, detail + "violated beyond 3 standard errors"};
    }
  }
  return {true, detail + "all within 3 standard errors of the closed-form bounds"};
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "oracle equivalence on all small connected bipartite graphs", criterion1},
      {2, "rank-vs-sequential Luby distribution distance <= 0.02", criterion2},
      {3, "one Luby round matches at least n/288 nodes", criterion3},
      {4, "residual degrees concentrate at half after one round", criterion4},
      {5, "44-round driver leaves at most an eps fraction unmatched", criterion5},
      {6, "warmup pipeline reaches OPT - 0.3n with the cap untouched", criterion6},
      {7, "rounded hyperedge sets are always vertex-disjoint", criterion7},
      {8, "node-averaged finish time flat in the degree, outputs maximal", criterion8},
      {9, "gadget families: regular, bipartite, exact node counts", criterion9},
      {10, "truncated Luby fails gadget pairs at rate >= 0.2", criterion10},
      {11, "schedule flags hold at the regime boundary", criterion11},
      {12, "Monte-Carlo tails stay below the shifted-martingale bounds", criterion12},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool all_pass = true;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s — %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL",
                c.number, c.name, outcome.detail.c_str(), dt);
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
