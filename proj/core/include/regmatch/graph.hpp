#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regmatch/rational.hpp"

namespace regmatch {

using NodeId = std::int32_t;

struct Edge {
  NodeId u;
  NodeId v;
  bool operator==(const Edge&) const = default;
};

enum class Side : std::uint8_t { L = 0, R = 1 };

// Immutable undirected simple graph with dense 0..n-1 node ids, sorted
// adjacency, and an optional bipartition labelling. Construction validates
// simplicity (no loops, no parallel edges) and, when sides are given, that
// every edge crosses the bipartition.
class Graph {
 public:
  Graph() = default;
  Graph(NodeId node_count, std::vector<Edge> edges);
  Graph(NodeId node_count, std::vector<Edge> edges, std::vector<Side> sides);

  NodeId node_count() const { return node_count_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  NodeId degree(NodeId v) const {
    return static_cast<NodeId>(offsets_[v + 1] - offsets_[v]);
  }
  bool has_edge(NodeId u, NodeId v) const;

  bool has_sides() const { return !sides_.empty(); }
  Side side(NodeId v) const { return sides_[v]; }
  const std::vector<Side>& sides() const { return sides_; }

 private:
  void build_adjacency();

  NodeId node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<Side> sides_;
};

struct DegreeReport {
  NodeId min_degree = 0;
  NodeId max_degree = 0;
  Rational mean_degree;
  bool is_regular = false;
  std::optional<NodeId> regular_degree;
  bool is_bipartite = false;
  std::map<NodeId, std::int64_t> degree_histogram;
};

// Bipartite generator: union of `delta` random permutations of [n_side],
// resampling any permutation that collides with an earlier one. Left side
// is 0..n_side-1, right side n_side..2*n_side-1. Throws std::runtime_error
// after 1000 failed resamples for one permutation slot.
Graph gen_regular_bipartite(NodeId n_side, NodeId delta, std::uint64_t seed);

// Configuration-model generator filtered to simple graphs: the whole stub
// pairing is resampled whenever it produces a loop or parallel edge.
// Requires n*delta even and delta < n; gives up after 10000 resamples.
Graph gen_regular_general(NodeId n, NodeId delta, std::uint64_t seed);

DegreeReport validate(const Graph& g);

// Nodes u whose whole closed 2-hop ball has degrees within
// [delta*(1-alpha), delta*(1+alpha)].
std::vector<NodeId> classify_alpha_regular(const Graph& g, double alpha, NodeId delta);

// Edge-list text format: "n m [bipartite]" header, then one "u v" line per
// edge with 0-based ids. The loader validates simplicity and, when the
// bipartite token is present, 2-colors the graph to recover side labels.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

}  // namespace regmatch
