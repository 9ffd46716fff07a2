#pragma once

#include <vector>

#include "regmatch/graph.hpp"

namespace regmatch {

// A set of vertex-disjoint edges with per-node partner lookup and the round
// at which each node was matched (-1 when unmatched / not applicable).
struct Matching {
  std::vector<Edge> edges;
  std::vector<NodeId> partner;      // -1 when unmatched
  std::vector<NodeId> match_round;  // -1 when unmatched

  static Matching empty(NodeId node_count) {
    Matching m;
    m.partner.assign(node_count, -1);
    m.match_round.assign(node_count, -1);
    return m;
  }

  std::int64_t size() const { return static_cast<std::int64_t>(edges.size()); }
  bool covers(NodeId v) const { return partner[v] != -1; }

  void add(NodeId u, NodeId v, NodeId round) {
    edges.push_back({u, v});
    partner[u] = v;
    partner[v] = u;
    match_round[u] = round;
    match_round[v] = round;
  }
};

// Throws std::invalid_argument when m is not a matching in g (non-edge,
// shared endpoint, or inconsistent partner map).
void check_matching(const Graph& g, const Matching& m);
bool is_matching(const Graph& g, const Matching& m);

// No edge of g has both endpoints unmatched.
bool is_maximal(const Graph& g, const Matching& m);

struct ResidualGraph {
  Graph graph;
  std::vector<NodeId> old_to_new;  // -1 for removed nodes
  std::vector<NodeId> new_to_old;
};

// Induced subgraph on the unmatched nodes, with a retained id map.
ResidualGraph remove_matched(const Graph& g, const Matching& m);

}  // namespace regmatch
