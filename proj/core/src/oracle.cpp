#include "regmatch/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace regmatch {

std::optional<std::vector<Side>> try_two_color(const Graph& g) {
  std::vector<std::int8_t> color(g.node_count(), -1);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    stack.assign(1, s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(v)) {
        if (color[w] == -1) {
          color[w] = static_cast<std::int8_t>(1 - color[v]);
          stack.push_back(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<Side> sides(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) sides[v] = color[v] == 0 ? Side::L : Side::R;
  return sides;
}

namespace {

constexpr NodeId kFree = -1;

struct HopcroftKarp {
  const Graph& g;
  const std::vector<Side>& sides;
  std::vector<NodeId> match;  // partner or kFree, over all nodes
  std::vector<std::int32_t> layer;
  std::vector<NodeId> left;

  HopcroftKarp(const Graph& g_, const std::vector<Side>& sides_)
      : g(g_), sides(sides_), match(g_.node_count(), kFree), layer(g_.node_count(), -1) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (sides[v] == Side::L) left.push_back(v);
    }
  }

  bool bfs() {
    std::vector<NodeId> queue;
    std::fill(layer.begin(), layer.end(), -1);
    for (NodeId v : left) {
      if (match[v] == kFree) {
        layer[v] = 0;
        queue.push_back(v);
      }
    }
    bool reachable_free_right = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeId v = queue[head];
      for (NodeId w : g.neighbors(v)) {
        NodeId next = match[w];
        if (next == kFree) {
          reachable_free_right = true;
        } else if (layer[next] == -1) {
          layer[next] = layer[v] + 1;
          queue.push_back(next);
        }
      }
    }
    return reachable_free_right;
  }

  bool dfs(NodeId v) {
    for (NodeId w : g.neighbors(v)) {
      NodeId next = match[w];
      if (next == kFree || (layer[next] == layer[v] + 1 && dfs(next))) {
        match[v] = w;
        match[w] = v;
        return true;
      }
    }
    layer[v] = -1;
    return false;
  }

  void solve() {
    while (bfs()) {
      for (NodeId v : left) {
        if (match[v] == kFree) dfs(v);
      }
    }
  }

  // Alternating reachability from free left nodes gives the Koenig cover
  // (L minus reached) plus (R intersect reached).
  std::vector<NodeId> koenig_cover() const {
    std::vector<char> reached(g.node_count(), 0);
    std::vector<NodeId> queue;
    for (NodeId v : left) {
      if (match[v] == kFree) {
        reached[v] = 1;
        queue.push_back(v);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeId v = queue[head];
      for (NodeId w : g.neighbors(v)) {
        if (match[v] == w || reached[w]) continue;  // only non-matching edges L->R
        reached[w] = 1;
        if (match[w] != kFree && !reached[match[w]]) {
          reached[match[w]] = 1;
          queue.push_back(match[w]);
        }
      }
    }
    std::vector<NodeId> cover;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (sides[v] == Side::L ? (!reached[v] && match[v] != kFree) : reached[v] != 0) {
        cover.push_back(v);
      }
    }
    return cover;
  }
};

}  // namespace

BipartiteMatchingResult max_matching_bipartite(const Graph& g) {
  std::vector<Side> sides;
  if (g.has_sides()) {
    sides = g.sides();
  } else {
    auto derived = try_two_color(g);
    if (!derived) throw std::invalid_argument("graph is not bipartite");
    sides = std::move(*derived);
  }

  HopcroftKarp hk(g, sides);
  hk.solve();

  BipartiteMatchingResult result;
  result.matching = Matching::empty(g.node_count());
  for (NodeId v : hk.left) {
    if (hk.match[v] != kFree) result.matching.add(v, hk.match[v], 0);
  }
  result.vertex_cover = hk.koenig_cover();

  if (static_cast<std::int64_t>(result.vertex_cover.size()) != result.matching.size()) {
    throw std::logic_error("Koenig certificate size mismatch");
  }
  std::vector<char> in_cover(g.node_count(), 0);
  for (NodeId v : result.vertex_cover) in_cover[v] = 1;
  for (const Edge& e : g.edges()) {
    if (!in_cover[e.u] && !in_cover[e.v]) {
      throw std::logic_error("Koenig certificate misses an edge");
    }
  }
  return result;
}

namespace {

struct ExactSearch {
  std::vector<std::uint64_t> adj;
  std::unordered_map<std::uint64_t, std::int32_t> memo;
  bool use_memo;

  std::int32_t best(std::uint64_t avail) {
    // Skip vertices with no available neighbor.
    while (avail != 0) {
      NodeId v = static_cast<NodeId>(__builtin_ctzll(avail));
      if ((adj[v] & avail) != 0) break;
      avail &= avail - 1;
    }
    if (avail == 0) return 0;
    if (use_memo) {
      auto it = memo.find(avail);
      if (it != memo.end()) return it->second;
    }
    NodeId v = static_cast<NodeId>(__builtin_ctzll(avail));
    std::uint64_t without_v = avail & ~(std::uint64_t(1) << v);
    std::int32_t result = best(without_v);  // leave v unmatched
    std::uint64_t candidates = adj[v] & avail;
    while (candidates != 0) {
      NodeId u = static_cast<NodeId>(__builtin_ctzll(candidates));
      candidates &= candidates - 1;
      result = std::max<std::int32_t>(
          result, 1 + best(without_v & ~(std::uint64_t(1) << u)));
    }
    if (use_memo) memo[avail] = result;
    return result;
  }
};

}  // namespace

std::int32_t max_matching_exact_small(const Graph& g) {
  if (g.node_count() > 64) throw std::invalid_argument("exact oracle limited to 64 nodes");
  ExactSearch search;
  search.adj.assign(g.node_count(), 0);
  for (const Edge& e : g.edges()) {
    search.adj[e.u] |= std::uint64_t(1) << e.v;
    search.adj[e.v] |= std::uint64_t(1) << e.u;
  }
  search.use_memo = g.node_count() <= 32;
  std::uint64_t all = g.node_count() == 64 ? ~std::uint64_t(0)
                                           : (std::uint64_t(1) << g.node_count()) - 1;
  return search.best(all);
}

Rational folklore_bound(std::int64_t n, const Rational& tau_e, const Rational& tau_v,
                        const Rational& kappa, const Rational& d) {
  const Rational half(1, 2);
  for (const Rational* r : {&tau_e, &tau_v, &kappa}) {
    if (*r < Rational(0) || !(*r < half)) {
      throw std::invalid_argument("slack parameters must be in [0, 1/2)");
    }
  }
  if (d < Rational(1)) throw std::invalid_argument("D must be at least 1");
  if (n < 0) throw std::invalid_argument("n must be non-negative");

  Rational value = Rational(1) - tau_e - tau_v - Rational(2) * kappa -
                   Rational(1) / (d + Rational(1));
  value = value * Rational(n) * half;
  if (value < Rational(0)) return Rational(0);
  return value;
}

Rational approx_ratio(const Matching& m, std::int64_t opt) {
  if (m.size() == 0) {
    if (opt == 0) return Rational(1);
    throw std::domain_error("approximation ratio undefined for an empty matching");
  }
  return Rational(opt, m.size());
}

}  // namespace regmatch
