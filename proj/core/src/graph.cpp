#include "regmatch/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "regmatch/rng.hpp"

namespace regmatch {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t(std::uint32_t(u)) << 32) | std::uint32_t(v);
}

void check_simple(NodeId n, const std::vector<Edge>& edges) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    if (!seen.insert(edge_key(e.u, e.v)).second) {
      throw std::invalid_argument("parallel edge");
    }
  }
}

// 2-coloring over all components; returns colors or nullopt on an odd cycle.
std::optional<std::vector<Side>> two_color(const Graph& g) {
  std::vector<std::int8_t> color(g.node_count(), -1);
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    queue.clear();
    queue.push_back(s);
    while (!queue.empty()) {
      NodeId v = queue.back();
      queue.pop_back();
      for (NodeId w : g.neighbors(v)) {
        if (color[w] == -1) {
          color[w] = static_cast<std::int8_t>(1 - color[v]);
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<Side> sides(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    sides[v] = color[v] == 0 ? Side::L : Side::R;
  }
  return sides;
}

}  // namespace

Graph::Graph(NodeId node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 0) throw std::invalid_argument("negative node count");
  check_simple(node_count_, edges_);
  build_adjacency();
}

Graph::Graph(NodeId node_count, std::vector<Edge> edges, std::vector<Side> sides)
    : node_count_(node_count), edges_(std::move(edges)), sides_(std::move(sides)) {
  if (node_count_ < 0) throw std::invalid_argument("negative node count");
  if (static_cast<NodeId>(sides_.size()) != node_count_) {
    throw std::invalid_argument("side labels must cover every node");
  }
  check_simple(node_count_, edges_);
  for (const Edge& e : edges_) {
    if (sides_[e.u] == sides_[e.v]) {
      throw std::invalid_argument("edge does not cross the bipartition");
    }
  }
  build_adjacency();
}

void Graph::build_adjacency() {
  offsets_.assign(node_count_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(static_cast<std::size_t>(offsets_[node_count_]));
  std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }
  for (NodeId v = 0; v < node_count_; ++v) {
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph gen_regular_bipartite(NodeId n_side, NodeId delta, std::uint64_t seed) {
  if (n_side <= 0) throw std::invalid_argument("n_side must be positive");
  if (delta < 0 || delta > n_side) throw std::invalid_argument("need 0 <= delta <= n_side");

  // used[i] holds the right-partners already assigned to left node i.
  std::vector<std::unordered_set<NodeId>> used(n_side);
  std::vector<NodeId> perm(n_side);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n_side) * delta);

  // Augmenting reassignment in the allowed-pairs graph; the allowed graph
  // is (n_side - slot)-regular, so a completion always exists.
  struct KuhnRepair {
    NodeId n;
    const std::vector<std::unordered_set<NodeId>>& used;
    std::vector<NodeId> pos_of_value;  // -1 while unassigned
    std::vector<char> visited;
    Rng& rng;

    bool assign(NodeId i, int depth) {
      if (depth > n) return false;
      NodeId start = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
      for (NodeId step = 0; step < n; ++step) {
        NodeId v = static_cast<NodeId>((start + step) % n);
        if (visited[v] || used[i].count(v)) continue;
        visited[v] = 1;
        NodeId holder = pos_of_value[v];
        if (holder == -1 || assign(holder, depth + 1)) {
          pos_of_value[v] = i;
          return true;
        }
      }
      return false;
    }
  };

  for (NodeId slot = 0; slot < delta; ++slot) {
    Rng rng(Rng::derive(seed, stream::kPermutation, slot));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    // Fast path: resample colliding entries by random transpositions. This
    // converges while the collision density stays below roughly 1/2.
    bool placed = false;
    for (int sweep = 0; sweep < 50; ++sweep) {
      bool collision = false;
      for (NodeId i = 0; i < n_side; ++i) {
        if (used[i].count(perm[i]) == 0) continue;
        collision = true;
        NodeId j = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n_side)));
        std::swap(perm[i], perm[j]);
      }
      if (!collision) {
        placed = true;
        break;
      }
    }
    if (!placed) {
      // Dense regime: unassign the colliding entries and complete the
      // permutation by augmenting paths over the allowed values.
      KuhnRepair repair{n_side, used, std::vector<NodeId>(n_side, -1),
                        std::vector<char>(n_side, 0), rng};
      std::vector<NodeId> pending;
      for (NodeId i = 0; i < n_side; ++i) {
        if (used[i].count(perm[i]) == 0) {
          repair.pos_of_value[perm[i]] = i;
        } else {
          pending.push_back(i);
        }
      }
      placed = true;
      for (NodeId i : pending) {
        std::fill(repair.visited.begin(), repair.visited.end(), 0);
        if (!repair.assign(i, 0)) {
          placed = false;
          break;
        }
      }
      if (placed) {
        for (NodeId v = 0; v < n_side; ++v) perm[repair.pos_of_value[v]] = v;
      }
    }
    if (!placed) {
      throw std::runtime_error("bipartite generator: permutation slot exhausted retries");
    }
    for (NodeId i = 0; i < n_side; ++i) {
      used[i].insert(perm[i]);
      edges.push_back({i, static_cast<NodeId>(n_side + perm[i])});
    }
  }

  std::vector<Side> sides(static_cast<std::size_t>(n_side) * 2);
  for (NodeId v = 0; v < n_side; ++v) sides[v] = Side::L;
  for (NodeId v = n_side; v < 2 * n_side; ++v) sides[v] = Side::R;
  return Graph(2 * n_side, std::move(edges), std::move(sides));
}

Graph gen_regular_general(NodeId n, NodeId delta, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("n must be positive");
  if (delta < 0 || delta >= n) throw std::invalid_argument("need 0 <= delta < n");
  if ((static_cast<std::int64_t>(n) * delta) % 2 != 0) {
    throw std::invalid_argument("n*delta must be even");
  }

  if (delta == 0) return Graph(n, {});
  std::vector<NodeId> stubs(static_cast<std::size_t>(n) * delta);
  for (NodeId v = 0; v < n; ++v) {
    std::fill(stubs.begin() + static_cast<std::size_t>(v) * delta,
              stubs.begin() + static_cast<std::size_t>(v + 1) * delta, v);
  }

  // Stub pairing, then loops and parallel edges are resampled away with
  // random double-edge swaps; a stuck repair restarts the whole pairing.
  std::vector<Edge> edges(stubs.size() / 2);
  std::unordered_map<std::uint64_t, std::int32_t> count;
  count.reserve(edges.size() * 2);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Rng rng(Rng::derive(seed, stream::kPermutation, attempt));
    rng.shuffle(stubs);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      edges[i] = {stubs[2 * i], stubs[2 * i + 1]};
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
      count.clear();
      for (const Edge& e : edges) {
        if (e.u != e.v) ++count[edge_key(e.u, e.v)];
      }
      bool defective = false;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        Edge& e = edges[i];
        if (e.u != e.v && count[edge_key(e.u, e.v)] <= 1) continue;
        defective = true;
        std::size_t j = static_cast<std::size_t>(rng.below(edges.size()));
        if (j == i) continue;
        Edge& f = edges[j];
        if (rng.coin()) std::swap(e.v, f.v);
        else std::swap(e.v, f.u);
      }
      if (!defective) return Graph(n, std::move(edges));
    }
  }
  throw std::runtime_error("configuration model: resample cap exhausted");
}

DegreeReport validate(const Graph& g) {
  DegreeReport report;
  NodeId n = g.node_count();
  if (n == 0) {
    report.is_regular = true;
    report.regular_degree = 0;
    report.is_bipartite = true;
    report.mean_degree = Rational(0);
    return report;
  }
  report.min_degree = g.degree(0);
  report.max_degree = g.degree(0);
  for (NodeId v = 0; v < n; ++v) {
    NodeId d = g.degree(v);
    report.min_degree = std::min(report.min_degree, d);
    report.max_degree = std::max(report.max_degree, d);
    ++report.degree_histogram[d];
  }
  report.mean_degree = Rational(2 * g.edge_count(), n);
  report.is_regular = report.min_degree == report.max_degree;
  if (report.is_regular) report.regular_degree = report.min_degree;
  report.is_bipartite = two_color(g).has_value();
  return report;
}

std::vector<NodeId> classify_alpha_regular(const Graph& g, double alpha, NodeId delta) {
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must be in [0,1]");
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  const double lo = delta * (1.0 - alpha);
  const double hi = delta * (1.0 + alpha);

  std::vector<char> degree_ok(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    double d = g.degree(v);
    degree_ok[v] = d >= lo && d <= hi;
  }

  // The closed 2-ball of u is {u} plus neighbors plus neighbors-of-neighbors.
  std::vector<NodeId> result;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    bool ok = degree_ok[u];
    for (NodeId v : g.neighbors(u)) {
      if (!ok) break;
      if (!degree_ok[v]) {
        ok = false;
        break;
      }
      for (NodeId w : g.neighbors(v)) {
        if (!degree_ok[w]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) result.push_back(u);
  }
  return result;
}

Graph load_edge_list(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("edge list: missing header");
  std::istringstream hs(header);
  std::int64_t n = 0, m = 0;
  if (!(hs >> n >> m)) throw std::runtime_error("edge list: bad header");
  std::string token;
  bool bipartite = false;
  if (hs >> token) {
    if (token != "bipartite") throw std::runtime_error("edge list: unknown header token");
    bipartite = true;
  }
  if (n < 0 || m < 0) throw std::runtime_error("edge list: negative counts");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    std::int64_t u = 0, v = 0;
    if (!(in >> u >> v)) throw std::runtime_error("edge list: truncated edge section");
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  Graph g(static_cast<NodeId>(n), std::move(edges));
  if (!bipartite) return g;
  auto sides = two_color(g);
  if (!sides) throw std::runtime_error("edge list: header claims bipartite but graph is not");
  return Graph(g.node_count(), g.edges(), std::move(*sides));
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  out << g.node_count() << ' ' << g.edge_count();
  if (g.has_sides()) out << " bipartite";
  out << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void save_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  save_edge_list(g, out);
}

}  // namespace regmatch
