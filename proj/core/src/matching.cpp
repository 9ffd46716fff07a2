#include "regmatch/matching.hpp"

#include <stdexcept>

namespace regmatch {

void check_matching(const Graph& g, const Matching& m) {
  if (static_cast<NodeId>(m.partner.size()) != g.node_count()) {
    throw std::invalid_argument("matching partner map does not cover the graph");
  }
  std::vector<char> used(g.node_count(), 0);
  for (const Edge& e : m.edges) {
    if (!g.has_edge(e.u, e.v)) throw std::invalid_argument("matching contains a non-edge");
    if (used[e.u] || used[e.v]) throw std::invalid_argument("matching edges share an endpoint");
    used[e.u] = used[e.v] = 1;
    if (m.partner[e.u] != e.v || m.partner[e.v] != e.u) {
      throw std::invalid_argument("partner map inconsistent with edge set");
    }
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (m.partner[v] != -1 && !used[v]) {
      throw std::invalid_argument("partner set for a node with no matching edge");
    }
  }
}

bool is_matching(const Graph& g, const Matching& m) {
  try {
    check_matching(g, m);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

bool is_maximal(const Graph& g, const Matching& m) {
  for (const Edge& e : g.edges()) {
    if (!m.covers(e.u) && !m.covers(e.v)) return false;
  }
  return true;
}

ResidualGraph remove_matched(const Graph& g, const Matching& m) {
  check_matching(g, m);
  ResidualGraph res;
  res.old_to_new.assign(g.node_count(), -1);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!m.covers(v)) {
      res.old_to_new[v] = static_cast<NodeId>(res.new_to_old.size());
      res.new_to_old.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    NodeId u = res.old_to_new[e.u], v = res.old_to_new[e.v];
    if (u != -1 && v != -1) edges.push_back({u, v});
  }
  NodeId n = static_cast<NodeId>(res.new_to_old.size());
  if (g.has_sides()) {
    std::vector<Side> sides(n);
    for (NodeId v = 0; v < n; ++v) sides[v] = g.side(res.new_to_old[v]);
    res.graph = Graph(n, std::move(edges), std::move(sides));
  } else {
    res.graph = Graph(n, std::move(edges));
  }
  return res;
}

}  // namespace regmatch
