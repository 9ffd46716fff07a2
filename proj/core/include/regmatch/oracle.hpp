#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "regmatch/matching.hpp"
#include "regmatch/rational.hpp"

namespace regmatch {

// 2-colors the graph; nullopt when an odd cycle exists.
std::optional<std::vector<Side>> try_two_color(const Graph& g);

struct BipartiteMatchingResult {
  Matching matching;
  std::vector<NodeId> vertex_cover;  // same size as the matching; covers all edges
};

// Maximum bipartite matching by layered augmenting phases. The returned
// vertex cover has exactly |matching| nodes and touches every edge, which
// certifies maximality. Sides come from the graph or from 2-coloring;
// throws std::invalid_argument when the graph is not bipartite.
BipartiteMatchingResult max_matching_bipartite(const Graph& g);

// Exact maximum matching size for graphs with at most 64 nodes via
// branch-and-bound over the lowest available vertex, memoized up to 32
// nodes.
std::int32_t max_matching_exact_small(const Graph& g);

// (1 - tau_e - tau_v - 2*kappa - 1/(D+1)) * n/2, clamped at zero.
// tau_e, tau_v, kappa in [0, 1/2); D >= 1.
Rational folklore_bound(std::int64_t n, const Rational& tau_e, const Rational& tau_v,
                        const Rational& kappa, const Rational& d);

// opt / |m|; 1 when both are zero. Throws std::domain_error when the
// matching is empty but opt is not.
Rational approx_ratio(const Matching& m, std::int64_t opt);

}  // namespace regmatch
