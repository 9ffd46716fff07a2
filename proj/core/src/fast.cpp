#include "regmatch/fast.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "regmatch/oracle.hpp"
#include "regmatch/rng.hpp"

namespace regmatch {

ScheduleTable param_schedules(std::int64_t delta, double eps, bool strict) {
  if (delta < 2) throw std::invalid_argument("delta must be at least 2");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0,1)");

  ScheduleTable table;
  table.input_degree = delta;
  table.eps = eps;

  const long double d = static_cast<long double>(delta);
  const long double gate = std::pow(d, -1.0L / 100000.0L);
  table.bounds_violated = static_cast<long double>(eps) * (1.0L + 1e-12L) < gate;
  if (strict && table.bounds_violated) {
    throw std::invalid_argument("eps below the degree^(-1/100000) gate in strict mode");
  }

  const long double rounds_real = 10.0L * std::log2(1.0L / static_cast<long double>(eps));
  table.horizon = static_cast<std::int32_t>(std::ceil(rounds_real - 1e-12L));
  table.claim_rounds = static_cast<std::int32_t>(std::floor(rounds_real + 1e-12L));
  if (table.horizon > 60) {
    throw std::invalid_argument("eps too small: exact degree column would overflow");
  }

  const long double base = std::pow(d, -1.0L / 600.0L);
  long double alpha = base;
  long double delta_i = std::exp(-std::pow(d, 1.0L / 200.0L));
  table.delta_cap = static_cast<double>(std::exp(-std::pow(d, 1.0L / 300.0L)));

  table.rows.push_back({static_cast<double>(alpha), static_cast<double>(delta_i), Rational(delta)});
  table.alpha_ok = true;
  table.delta_ok = true;
  for (std::int32_t i = 1; i <= table.horizon; ++i) {
    alpha = 10.0L * alpha + base;
    long double halved = d / std::pow(2.0L, static_cast<long double>(i));
    delta_i = d * d * (delta_i + 2.0L * std::exp(-std::pow(halved, 1.0L / 100.0L)));
    table.rows.push_back({static_cast<double>(alpha), static_cast<double>(delta_i),
                          Rational(delta, std::int64_t(1) << i)});
    if (i <= table.claim_rounds) {
      if (alpha > 0.1L) table.alpha_ok = false;
      if (delta_i > static_cast<long double>(table.delta_cap)) table.delta_ok = false;
    }
  }
  return table;
}

FastResult approx_match_fast(const Graph& g, double eps, std::uint64_t seed,
                             const FastOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0,1)");
  DegreeReport report = validate(g);
  if (!report.is_regular) throw std::invalid_argument("graph is not regular");
  const std::int64_t delta = *report.regular_degree;

  FastResult result;
  result.out_of_regime =
      static_cast<long double>(eps) <
      std::pow(static_cast<long double>(std::max<std::int64_t>(delta, 2)), -1.0L / 100000.0L);
  if (options.strict && result.out_of_regime) {
    throw std::invalid_argument("degree below (1/eps)^100000 in strict mode");
  }

  std::int32_t rounds = static_cast<std::int32_t>(std::ceil(10.0 * std::log2(1.0 / eps) - 1e-12));
  rounds = std::max(rounds, 1);
  if (options.max_rounds) rounds = std::min(rounds, *options.max_rounds);
  result.rounds = rounds;

  // A bipartite input is used as-is; the random 2-coloring is only the
  // lift for general graphs.
  auto own_sides = g.has_sides() ? std::optional<std::vector<Side>>(g.sides()) : try_two_color(g);
  Graph bip = own_sides ? color_code_bipartize_with(g, *own_sides)
                        : color_code_bipartize(g, Rng::derive(seed, stream::kNodeColor, 0));

  // Snapshot targets follow the bipartized degree (about delta/2), halving
  // per round.
  std::vector<ScheduleEntry> schedule;
  const std::int64_t d0 = delta / 2;
  if (d0 >= 2) {
    ScheduleTable table = param_schedules(d0, eps);
    for (std::int32_t r = 1; r <= rounds; ++r) {
      double alpha =
          r < static_cast<std::int32_t>(table.rows.size()) ? table.rows[r].alpha : 1.0;
      schedule.push_back({alpha, static_cast<double>(d0) / std::pow(2.0, r)});
    }
  }

  MultiRoundResult multi =
      multi_round_luby(bip, rounds, Rng::derive(seed, stream::kRound, 0),
                       schedule.empty() ? nullptr : &schedule, options.c_prime);
  result.matching = std::move(multi.matching);
  result.snapshots = std::move(multi.snapshots);
  const double n = static_cast<double>(g.node_count());
  result.unmatched_fraction =
      n == 0.0 ? 0.0 : 1.0 - static_cast<double>(2 * result.matching.size()) / n;
  return result;
}

NodeAvgResult maximal_match_node_avg(const Graph& g, std::uint64_t seed, int c_prime) {
  DegreeReport report = validate(g);
  if (!report.is_regular) {
    throw std::invalid_argument("node-averaged driver requires a regular graph");
  }
  const double delta = static_cast<double>(*report.regular_degree);
  const std::int32_t phase1 =
      delta >= 4.0
          ? static_cast<std::int32_t>(std::ceil(200.0 * std::log2(std::log2(delta)) - 1e-12))
          : 0;

  NodeAvgResult result;
  result.matching = Matching::empty(g.node_count());
  result.trace.finish_round.assign(g.node_count(), -1);
  result.trace.outputs.assign(g.node_count(), -1);

  // Phase 1 works on the bichromatic subgraph: the graph's own 2-coloring
  // when it is bipartite, a random coloring otherwise.
  std::vector<Side> colors;
  if (auto own = g.has_sides() ? std::optional<std::vector<Side>>(g.sides()) : try_two_color(g)) {
    colors = std::move(*own);
  } else {
    colors.resize(g.node_count());
    std::uint64_t cseed = Rng::derive(seed, stream::kNodeColor, 1);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      colors[v] = Rng(Rng::derive(cseed, stream::kNodeColor, v)).coin() ? Side::R : Side::L;
    }
  }

  // unmatched_deg[v]: neighbors of v (in g) that are still unmatched.
  std::vector<NodeId> unmatched_deg(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    unmatched_deg[v] = g.degree(v);
    if (unmatched_deg[v] == 0) result.trace.finish_round[v] = 0;
  }

  Graph cur = g;
  std::vector<NodeId> to_orig(g.node_count());
  std::iota(to_orig.begin(), to_orig.end(), 0);

  const std::int32_t hard_cap = 4 * g.node_count() + phase1 + 64;
  std::int32_t round = 0;
  std::int32_t phase1_done = 0;
  bool in_phase1 = phase1 > 0;
  while (cur.edge_count() > 0) {
    if (round > hard_cap) throw std::runtime_error("node-averaged driver failed to terminate");

    Matching local;
    if (in_phase1) {
      // Bichromatic subgraph of the residual, colors keyed to original ids.
      std::vector<Edge> bic;
      for (const Edge& e : cur.edges()) {
        if (colors[to_orig[e.u]] != colors[to_orig[e.v]]) bic.push_back(e);
      }
      if (bic.empty()) {
        in_phase1 = false;  // no bichromatic edges left; no round consumed
        continue;
      }
      ++round;
      ++phase1_done;
      if (phase1_done >= phase1) in_phase1 = false;
      Graph sub(cur.node_count(), std::move(bic));
      local = luby_round_distributed(sub, c_prime, Rng::derive(seed, stream::kRound, round));
    } else {
      ++round;
      local = luby_round_distributed(cur, c_prime, Rng::derive(seed, stream::kRound, round));
    }

    if (local.size() == 0) continue;

    std::vector<NodeId> newly;
    for (const Edge& e : local.edges) {
      NodeId a = to_orig[e.u], b = to_orig[e.v];
      result.matching.add(a, b, round);
      result.trace.finish_round[a] = round;
      result.trace.finish_round[b] = round;
      result.trace.outputs[a] = b;
      result.trace.outputs[b] = a;
      newly.push_back(a);
      newly.push_back(b);
    }
    for (NodeId w : newly) {
      for (NodeId x : g.neighbors(w)) {
        if (result.matching.covers(x)) continue;
        if (--unmatched_deg[x] == 0) result.trace.finish_round[x] = round;
      }
    }

    // Shrink the residual. local lives on cur's ids.
    ResidualGraph res = remove_matched(cur, local);
    std::vector<NodeId> next_map(res.graph.node_count());
    for (NodeId v = 0; v < res.graph.node_count(); ++v) {
      next_map[v] = to_orig[res.new_to_old[v]];
    }
    cur = std::move(res.graph);
    to_orig = std::move(next_map);
  }

  result.phase1_rounds = phase1_done;
  result.total_rounds = round;
  result.trace.rounds_executed = round;
  if (!is_maximal(g, result.matching)) {
    throw std::logic_error("node-averaged driver produced a non-maximal matching");
  }
  result.avg = node_averaged_time(result.trace);
  return result;
}

}  // namespace regmatch
