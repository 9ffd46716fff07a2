#pragma once

#include <cstdint>
#include <vector>

#include "regmatch/graph.hpp"

namespace regmatch {

// Node ids are shared with a host Graph; hyperedges are ordered node
// sequences (augmenting paths) of at least 2 distinct nodes.
struct Hypergraph {
  NodeId node_count = 0;
  std::vector<std::vector<NodeId>> hyperedges;
  NodeId f_bound = 0;  // >= size of every hyperedge
};

void check_hypergraph(const Hypergraph& h);

struct FractionalMatching {
  std::vector<double> weight;  // per hyperedge, in [0,1]

  double total() const {
    double t = 0;
    for (double w : weight) t += w;
    return t;
  }
};

// Per-node incident weight sums; useful for constraint checks.
std::vector<double> incident_weight(const Hypergraph& h, const FractionalMatching& x);

// Raise-and-freeze fractional matching: every live hyperedge starts at
// theta/maxdeg and is multiplied by (1 + eps_fm/f) per step; once a node's
// incident weight reaches theta = f/(f+eps_fm) its hyperedges freeze. A
// final saturating pass tops hyperedges up against the remaining slack.
// Output satisfies every node constraint and has total weight at least
// nu(h) / (f_bound + eps_fm), nu being the maximum integral matching size.
FractionalMatching fractional_hypergraph_matching(const Hypergraph& h, double eps_fm);

// Randomized rounding of Algorithm-style vertex draws: each node picks one
// incident hyperedge P with probability tau*x(P) (or nothing); P is kept
// iff one of its nodes picked it and every draw intersecting P equals P.
// The result is always a set of pairwise vertex-disjoint hyperedges
// (returned as indices). Throws std::invalid_argument when
// tau * incident weight exceeds 1 at some node.
std::vector<std::int32_t> round_fractional(const Hypergraph& h, const FractionalMatching& x,
                                           double tau, std::uint64_t seed);

}  // namespace regmatch
