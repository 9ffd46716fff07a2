#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "regmatch/graph.hpp"
#include "regmatch/matching.hpp"
#include "regmatch/sim.hpp"

namespace regmatch {

// Rank range 100*m^(c'+2), saturated below 2^126 so rank draws stay exact.
u128 luby_rank_range(std::int64_t m, int c_prime);

// One round of the rank-based distributed algorithm: every edge draws a
// uniform integer rank in {1, ..., 100*m^(c'+2)} and enters the matching
// iff its rank strictly beats every adjacent edge (ties drop both).
Matching luby_round_distributed(const Graph& g, int c_prime, std::uint64_t seed);

// Sequential view: edges arrive in a uniformly random order; an edge is
// matched iff it arrives before all of its neighbors.
Matching luby_round_sequential(const Graph& g, std::uint64_t seed);

// Sequential view restricted to the 3-hop edge set around u; returns the
// matched edges between N(u) and N^2(u).
Matching seq_luby_local(const Graph& g, NodeId u, std::uint64_t seed);

// Empirical L1 distance between the matching distributions of the rank and
// the sequential variant, `samples` draws each. Requires <= 12 edges so the
// matching histogram stays exact.
double tv_distance_estimate(const Graph& g, std::int64_t samples, int c_prime,
                            std::uint64_t seed);

// Random 2-coloring; keeps only bichromatic edges and labels sides by color.
Graph color_code_bipartize(const Graph& g, std::uint64_t seed);
Graph color_code_bipartize_with(const Graph& g, const std::vector<Side>& colors);

struct ScheduleEntry {
  double alpha;
  double delta;  // degree target for this round's residual
};

struct RoundSnapshot {
  std::int32_t round_index = 0;
  NodeId residual_node_count = 0;
  std::int64_t residual_edge_count = 0;
  NodeId matched_this_round = 0;  // nodes, not edges
  std::map<NodeId, std::int64_t> degree_histogram;
  std::optional<double> alpha_regular_fraction;
};

struct MultiRoundResult {
  Matching matching;  // cumulative, on the input graph's ids
  std::vector<RoundSnapshot> snapshots;
};

// Runs the distributed round `rounds` times, removing matched nodes between
// rounds. When a schedule is given, snapshot i reports the fraction of
// residual nodes whose 2-hop ball has degrees within
// [delta_i*(1-alpha_i), delta_i*(1+alpha_i)].
MultiRoundResult multi_round_luby(const Graph& g, std::int32_t rounds, std::uint64_t seed,
                                  const std::vector<ScheduleEntry>* schedule = nullptr,
                                  int c_prime = 2);

struct SurvivorStep {
  std::int64_t surviving;        // |E_i| at the beginning of iteration i
  double q;                      // |E_i| / (|E_u| - (i-1))
  NodeId labeled_neighbors;      // nodes of N(u) with a sampled incident edge, after i
  std::int64_t matched;          // |M_u| after iteration i
};

struct SurvivorTrajectory {
  std::int64_t local_edge_count = 0;  // |E_u|
  std::int64_t a_u_size = 0;          // |A_u|
  NodeId k = 0;                       // |N^2(u)|
  std::int64_t stopping_time = 0;     // floor(k * log2(deg(u)) / 100)
  std::vector<SurvivorStep> steps;    // one entry per iteration, full run
};

// Instruments the local sequential run around u: per-iteration surviving
// edge counts, sampling probabilities and matched counts, plus the
// martingale stopping time (log base 2, with deg(u) standing in for the
// regular degree).
SurvivorTrajectory instrument_survivors(const Graph& g, NodeId u, std::uint64_t seed);

// One-round Luby as a message-passing node program: rounds exchange ids,
// edge ranks drawn by the lower-id endpoint, and per-port other-edge
// minima; every node outputs its partner id (or -1) in round 3. Message
// payloads never exceed the rank range, so a trace of this program doubles
// as the bandwidth check.
class LubyMatchingProgram : public NodeProgram {
 public:
  explicit LubyMatchingProgram(u128 rank_range);
  std::unique_ptr<NodeProcess> init(NodeId node, NodeId degree,
                                    std::uint64_t local_seed) const override;

 private:
  u128 rank_range_;
};

}  // namespace regmatch
