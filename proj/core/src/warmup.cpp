#include "regmatch/warmup.hpp"

#include <algorithm>
#include <cmath>

#include "regmatch/rng.hpp"

namespace regmatch {

WarmupParams WarmupParams::from_eps(const Rational& eps) {
  if (!(Rational(0) < eps) || !(eps < Rational(1, 2))) {
    throw std::invalid_argument("eps must be in (0, 1/2)");
  }
  WarmupParams p;
  p.k_exact = Rational(4) / eps + Rational(1);
  p.t_exact = Rational(10000) / (eps * eps * eps * eps) + Rational(1);

  // Round k up to an odd integer >= 3 so path node counts have a parity.
  std::int64_t k = p.k_exact.num() / p.k_exact.den();
  if (Rational(k) < p.k_exact) ++k;
  if (k % 2 == 0) ++k;
  p.k = static_cast<std::int32_t>(std::max<std::int64_t>(k, 3));

  std::int64_t t = p.t_exact.num() / p.t_exact.den();
  if (Rational(t) < p.t_exact) ++t;
  p.phase_count = t;

  p.tau_exact = Rational(1, 4 * static_cast<std::int64_t>(p.k) * p.k);
  p.tau = p.tau_exact.to_double();
  return p;
}

double sampling_probability(std::int64_t delta, double eps) {
  return 3000.0 / (static_cast<double>(delta) * eps * eps * eps * eps);
}

SampledGraph sampling_stage(const Graph& g, double eps, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::invalid_argument("eps must be in (0, 1/2)");
  }
  DegreeReport report = validate(g);
  if (!report.is_regular) throw std::invalid_argument("sampling stage requires a regular graph");
  const std::int64_t delta = *report.regular_degree;
  if (delta == 0) throw std::invalid_argument("sampling stage requires positive degree");

  const double threshold = 6000.0 / (eps * eps * eps * eps);
  if (static_cast<double>(delta) <= threshold) {
    return SampledGraph{g, delta, false};
  }

  const double p = sampling_probability(delta, eps);
  const double cap = 2.0 * p * static_cast<double>(delta);  // == 6000/eps^4
  std::vector<char> keep(g.edge_count(), 0);
  std::vector<std::int64_t> deg(g.node_count(), 0);
  for (std::int64_t e = 0; e < g.edge_count(); ++e) {
    Rng rng(Rng::derive(seed, stream::kSampling, static_cast<std::uint64_t>(e)));
    if (rng.unit() < p) {
      keep[e] = 1;
      ++deg[g.edges()[e].u];
      ++deg[g.edges()[e].v];
    }
  }
  std::vector<char> survives(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    survives[v] = static_cast<double>(deg[v]) <= cap;
  }
  std::vector<Edge> kept;
  for (std::int64_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edges()[e];
    if (keep[e] && survives[ed.u] && survives[ed.v]) kept.push_back(ed);
  }
  SampledGraph out;
  if (g.has_sides()) {
    out.graph = Graph(g.node_count(), std::move(kept), g.sides());
  } else {
    out.graph = Graph(g.node_count(), std::move(kept));
  }
  out.degree_cap = static_cast<std::int64_t>(cap);
  out.sampled = true;
  return out;
}

namespace {

struct PathDfs {
  const Graph& g;
  const Matching& m;
  std::int32_t k;
  std::int64_t cap;
  std::vector<std::vector<NodeId>>& out;
  std::vector<char> on_path;
  std::vector<NodeId> path;

  PathDfs(const Graph& g_, const Matching& m_, std::int32_t k_, std::int64_t cap_,
          std::vector<std::vector<NodeId>>& out_)
      : g(g_), m(m_), k(k_), cap(cap_), out(out_), on_path(g_.node_count(), 0) {}

  // cur is the path head; the next edge must be a non-matching one.
  void extend_free(NodeId cur) {
    if (static_cast<std::int32_t>(path.size()) + 1 > k) return;
    for (NodeId w : g.neighbors(cur)) {
      if (on_path[w] || m.partner[cur] == w) continue;
      path.push_back(w);
      if (!m.covers(w)) {
        // Both endpoints free and the last edge is free: augmenting.
        if (path.front() < path.back()) {
          out.push_back(path);
          if (static_cast<std::int64_t>(out.size()) > cap) throw PathExplosionError(cap);
        }
      } else {
        on_path[w] = 1;
        extend_matched(w);
        on_path[w] = 0;
      }
      path.pop_back();
    }
  }

  // cur is matched; the only continuation is its matching edge.
  void extend_matched(NodeId cur) {
    NodeId w = m.partner[cur];
    if (on_path[w] || static_cast<std::int32_t>(path.size()) + 1 > k) return;
    path.push_back(w);
    on_path[w] = 1;
    extend_free(w);
    on_path[w] = 0;
    path.pop_back();
  }
};

}  // namespace

Hypergraph enumerate_augmenting_paths(const Graph& g, const Matching& m, std::int32_t k,
                                      std::int64_t cap) {
  check_matching(g, m);
  Hypergraph h;
  h.node_count = g.node_count();
  h.f_bound = std::max<std::int32_t>(k, 2);
  if (k < 2) return h;

  PathDfs dfs(g, m, k, cap, h.hyperedges);
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (m.covers(s)) continue;
    dfs.path.assign(1, s);
    dfs.on_path[s] = 1;
    dfs.extend_free(s);
    dfs.on_path[s] = 0;
  }
  return h;
}

Matching augment(const Graph& g, const Matching& m,
                 const std::vector<std::vector<NodeId>>& paths, NodeId round) {
  check_matching(g, m);
  std::vector<char> used(g.node_count(), 0);
  for (const auto& path : paths) {
    if (path.size() < 2 || path.size() % 2 != 0) {
      throw std::invalid_argument("augmenting path must have an even number of nodes");
    }
    if (m.covers(path.front()) || m.covers(path.back())) {
      throw std::invalid_argument("augmenting path endpoint is matched");
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
      NodeId v = path[i];
      if (v < 0 || v >= g.node_count()) throw std::invalid_argument("path node out of range");
      if (used[v]) throw std::invalid_argument("augmenting paths are not vertex-disjoint");
      used[v] = 1;
      if (i + 1 < path.size()) {
        NodeId w = path[i + 1];
        if (!g.has_edge(v, w)) throw std::invalid_argument("path uses a non-edge");
        bool is_matched_edge = m.partner[v] == w;
        if (i % 2 == 0 ? is_matched_edge : !is_matched_edge) {
          throw std::invalid_argument("path does not alternate");
        }
      }
    }
  }

  // Flip by reassigning partners along the free edges; every interior node
  // is an endpoint of some free edge, so the matched edges drop out.
  Matching out = m;
  for (const auto& path : paths) {
    for (std::size_t i = 0; i + 1 < path.size(); i += 2) {
      NodeId a = path[i], b = path[i + 1];
      out.partner[a] = b;
      out.partner[b] = a;
      if (out.match_round[a] < 0) out.match_round[a] = round;
      if (out.match_round[b] < 0) out.match_round[b] = round;
    }
  }
  out.edges.clear();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (out.partner[v] > v) out.edges.push_back({v, out.partner[v]});
  }
  return out;
}

ConstantMatchResult constant_match(const Graph& g, const Rational& eps, std::uint64_t seed,
                                   const ConstantMatchOptions& options) {
  ConstantMatchResult result;
  result.params = WarmupParams::from_eps(eps);
  result.matching = Matching::empty(g.node_count());

  std::int64_t phases = result.params.phase_count;
  if (options.phase_limit) phases = std::min(phases, *options.phase_limit);

  for (std::int64_t i = 1; i <= phases; ++i) {
    Hypergraph h;
    try {
      h = enumerate_augmenting_paths(g, result.matching, result.params.k,
                                     options.hyperedge_cap);
    } catch (const PathExplosionError&) {
      result.cap_aborted = true;
      break;
    }
    if (h.hyperedges.empty()) {
      result.exhausted_paths = true;
      break;
    }
    FractionalMatching x = fractional_hypergraph_matching(h, 0.5);
    std::vector<std::int32_t> kept =
        round_fractional(h, x, result.params.tau, Rng::derive(seed, stream::kRounding, i));
    result.phases_run = i;
    if (kept.empty()) continue;
    std::vector<std::vector<NodeId>> paths;
    paths.reserve(kept.size());
    for (std::int32_t e : kept) paths.push_back(h.hyperedges[e]);
    result.matching = augment(g, result.matching, paths, static_cast<NodeId>(i));
  }
  result.matched_size = result.matching.size();
  return result;
}

WarmupResult warmup_full(const Graph& g, const Rational& eps, std::uint64_t seed,
                         const WarmupOptions& options) {
  if (!(Rational(0) < eps) || !(eps < Rational(1, 2))) {
    throw std::invalid_argument("eps must be in (0, 1/2)");
  }
  WarmupResult result;
  // Proven regime needs eps > n^(-1/20); smaller values still run, flagged.
  if (g.node_count() > 0) {
    double floor_eps = std::pow(static_cast<double>(g.node_count()), -0.05);
    result.out_of_regime = eps.to_double() <= floor_eps;
  }

  Rational internal = options.internal_eps ? *options.internal_eps : eps / Rational(8);
  result.stage = sampling_stage(g, internal.to_double(), Rng::derive(seed, stream::kSampling, 0));

  ConstantMatchOptions cm;
  cm.hyperedge_cap = options.hyperedge_cap;
  cm.phase_limit = options.phase_limit;
  result.inner =
      constant_match(result.stage.graph, internal, Rng::derive(seed, stream::kTrial, 1), cm);
  result.matching = result.inner.matching;
  return result;
}

}  // namespace regmatch
