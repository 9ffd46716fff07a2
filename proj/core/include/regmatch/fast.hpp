#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "regmatch/luby.hpp"
#include "regmatch/matching.hpp"
#include "regmatch/rational.hpp"
#include "regmatch/sim.hpp"

namespace regmatch {

struct ScheduleRow {
  double alpha;      // alpha_i
  double delta;      // delta_i (irregular-node fraction bound)
  Rational degree;   // Delta / 2^i, exact
};

struct ScheduleTable {
  std::int64_t input_degree = 0;
  double eps = 0.0;
  std::int32_t horizon = 0;       // ceil(10*log2(1/eps)); rows cover 0..horizon
  std::int32_t claim_rounds = 0;  // floor(10*log2(1/eps)); range the flags quantify over
  std::vector<ScheduleRow> rows;
  double delta_cap = 0.0;         // exp(-degree^(1/300))
  bool alpha_ok = false;          // alpha_i <= 1/10 for 1 <= i <= claim_rounds
  bool delta_ok = false;          // delta_i <= delta_cap over the same range
  bool bounds_violated = false;   // eps below degree^(-1/100000)
};

// Per-round parameter recursions: alpha_0 = D^(-1/600),
// alpha_i = 10*alpha_{i-1} + D^(-1/600); delta_0 = exp(-D^(1/200)),
// delta_i = D^2*(delta_{i-1} + 2*exp(-(D/2^i)^(1/100))). Evaluated in long
// double; degree column exact. Strict mode throws when eps is below the
// D^(-1/100000) gate instead of just flagging it.
ScheduleTable param_schedules(std::int64_t delta, double eps, bool strict = false);

struct FastOptions {
  int c_prime = 2;
  bool strict = false;                     // enforce the degree/eps gate
  std::optional<std::int32_t> max_rounds;  // truncate below ceil(10*log2(1/eps))
};

struct FastResult {
  Matching matching;
  std::vector<RoundSnapshot> snapshots;
  std::int32_t rounds = 0;
  double unmatched_fraction = 0.0;
  bool out_of_regime = false;
};

// Color-code to a bipartite subgraph, then run the distributed round
// ceil(10*log2(1/eps)) times with removal. Requires a regular graph.
FastResult approx_match_fast(const Graph& g, double eps, std::uint64_t seed,
                             const FastOptions& options = {});

struct NodeAvgResult {
  Matching matching;
  Trace trace;  // finish_round = matching round, or the round the node's
                // last unmatched neighbor disappeared; message stats zero
  Rational avg;
  std::int32_t phase1_rounds = 0;
  std::int32_t total_rounds = 0;
};

// Maximal matching tuned for node-averaged time: color-coded Luby for
// ceil(200*log2(log2(D))) rounds, then repeated Luby rounds on the full
// residual until maximality. Requires a regular graph with degree >= 2.
NodeAvgResult maximal_match_node_avg(const Graph& g, std::uint64_t seed, int c_prime = 2);

}  // namespace regmatch
