#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "regmatch/hypergraph.hpp"
#include "regmatch/matching.hpp"
#include "regmatch/rational.hpp"

namespace regmatch {

inline constexpr std::int64_t kDefaultHyperedgeCap = 10'000'000;

// Phase parameters derived from the accuracy target. The exact rationals
// are kept alongside the integer values actually used: the path bound k is
// rounded up to an odd integer >= 3 and the phase count is the ceiling.
struct WarmupParams {
  Rational k_exact;    // 4/eps + 1
  Rational t_exact;    // 10^4/eps^4 + 1
  Rational tau_exact;  // 1/(4k^2), with the rounded k
  std::int32_t k = 0;
  std::int64_t phase_count = 0;
  double tau = 0.0;

  static WarmupParams from_eps(const Rational& eps);
};

// Edge-sampling probability used once the degree exceeds 6000/eps^4.
double sampling_probability(std::int64_t delta, double eps);

struct SampledGraph {
  Graph graph;             // same node ids as the input; trimmed nodes isolated
  std::int64_t degree_cap; // d: min(6000/eps^4, delta), floored
  bool sampled = false;    // false when the graph was below the threshold
};

// Degree reduction stage: returns the graph unchanged when delta is already
// at most 6000/eps^4; otherwise keeps each edge with probability
// 3000/(delta*eps^4) and drops every node whose sampled degree exceeds
// twice the expectation. Requires a regular graph with positive degree.
SampledGraph sampling_stage(const Graph& g, double eps, std::uint64_t seed);

class PathExplosionError : public std::runtime_error {
 public:
  explicit PathExplosionError(std::int64_t cap)
      : std::runtime_error("augmenting path enumeration exceeded cap"), cap_(cap) {}
  std::int64_t cap() const { return cap_; }

 private:
  std::int64_t cap_;
};

// All simple alternating paths with both endpoints unmatched and at most k
// nodes, deduplicated by keeping the direction rooted at the smaller
// endpoint. DFS alternates free and matched edges from every unmatched
// root. Throws PathExplosionError past `cap` hyperedges.
Hypergraph enumerate_augmenting_paths(const Graph& g, const Matching& m, std::int32_t k,
                                      std::int64_t cap = kDefaultHyperedgeCap);

// Flips a set of vertex-disjoint augmenting paths into the matching; the
// result has |m| + |paths| edges. Newly matched endpoints get `round`.
// Throws std::invalid_argument when some path is not augmenting for m or
// the paths overlap.
Matching augment(const Graph& g, const Matching& m,
                 const std::vector<std::vector<NodeId>>& paths, NodeId round = 0);

struct ConstantMatchOptions {
  std::int64_t hyperedge_cap = kDefaultHyperedgeCap;
  std::optional<std::int64_t> phase_limit;  // truncate below the formula value
};

struct ConstantMatchResult {
  Matching matching;
  WarmupParams params;
  std::int64_t phases_run = 0;
  bool exhausted_paths = false;  // no augmenting path of length <= k remained
  bool cap_aborted = false;      // a phase hit the hyperedge cap and was abandoned
  std::int64_t matched_size = 0;
};

// Phased augmenting driver: enumerate paths, solve the fractional
// hypergraph matching, round, augment; repeats for 10^4/eps^4 + 1 phases or
// until no short augmenting path remains. Matching size never decreases.
ConstantMatchResult constant_match(const Graph& g, const Rational& eps, std::uint64_t seed,
                                   const ConstantMatchOptions& options = {});

struct WarmupOptions {
  // Stage accuracy override; by default both stages run at eps/8.
  std::optional<Rational> internal_eps;
  std::int64_t hyperedge_cap = kDefaultHyperedgeCap;
  std::optional<std::int64_t> phase_limit;
};

struct WarmupResult {
  Matching matching;
  SampledGraph stage;
  ConstantMatchResult inner;
  bool out_of_regime = false;  // eps at or below n^(-1/20)
};

// Degree reduction followed by the phased driver, both at eps/8 (or the
// override). Requires a regular graph and eps in (0, 1/2).
WarmupResult warmup_full(const Graph& g, const Rational& eps, std::uint64_t seed,
                         const WarmupOptions& options = {});

}  // namespace regmatch
