#include "regmatch/luby.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "regmatch/rng.hpp"

namespace regmatch {

namespace {

constexpr u128 kRankCap = u128(1) << 126;

}  // namespace

u128 luby_rank_range(std::int64_t m, int c_prime) {
  if (m <= 0) return 1;
  if (c_prime <= 0) throw std::invalid_argument("c_prime must be positive");
  u128 range = 100;
  for (int i = 0; i < c_prime + 2; ++i) {
    if (range > kRankCap / u128(m)) return kRankCap;
    range *= u128(m);
  }
  return range;
}

Matching luby_round_distributed(const Graph& g, int c_prime, std::uint64_t seed) {
  Matching m = Matching::empty(g.node_count());
  const std::int64_t ec = g.edge_count();
  if (ec == 0) return m;
  const u128 range = luby_rank_range(ec, c_prime);

  std::vector<u128> rank(ec);
  for (std::int64_t e = 0; e < ec; ++e) {
    Rng rng(Rng::derive(seed, stream::kEdgeRank, static_cast<std::uint64_t>(e)));
    rank[e] = u128(1) + rng.below128(range);
  }

  // Per node: smallest and second smallest incident rank. An edge wins at a
  // node iff its rank is strictly below every other incident rank.
  constexpr u128 kInf = ~u128(0);
  std::vector<u128> min1(g.node_count(), kInf), min2(g.node_count(), kInf);
  for (std::int64_t e = 0; e < ec; ++e) {
    for (NodeId v : {g.edges()[e].u, g.edges()[e].v}) {
      if (rank[e] < min1[v]) {
        min2[v] = min1[v];
        min1[v] = rank[e];
      } else if (rank[e] < min2[v]) {
        min2[v] = rank[e];
      }
    }
  }
  for (std::int64_t e = 0; e < ec; ++e) {
    const Edge& ed = g.edges()[e];
    u128 other_u = rank[e] == min1[ed.u] ? min2[ed.u] : min1[ed.u];
    u128 other_v = rank[e] == min1[ed.v] ? min2[ed.v] : min1[ed.v];
    if (rank[e] < other_u && rank[e] < other_v) m.add(ed.u, ed.v, 1);
  }
  return m;
}

Matching luby_round_sequential(const Graph& g, std::uint64_t seed) {
  Matching m = Matching::empty(g.node_count());
  const std::int64_t ec = g.edge_count();
  if (ec == 0) return m;

  std::vector<std::int64_t> order(ec);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(Rng::derive(seed, stream::kEdgeOrder, 0));
  rng.shuffle(order);

  // touched[v]: some incident edge was already sampled.
  std::vector<char> touched(g.node_count(), 0);
  for (std::int64_t e : order) {
    const Edge& ed = g.edges()[e];
    if (!touched[ed.u] && !touched[ed.v]) m.add(ed.u, ed.v, 1);
    touched[ed.u] = touched[ed.v] = 1;
  }
  return m;
}

namespace {

// Distances 0..3 from u (4 = farther). Also classifies each edge of g into
// the 3-hop local edge set E_u and the inner band A_u.
struct LocalView {
  std::vector<std::int8_t> dist;
  std::vector<std::int64_t> local_edges;  // indices into g.edges()
  std::vector<char> in_a_u;               // parallel to local_edges
  NodeId k = 0;                           // |N^2(u)|
};

LocalView local_view(const Graph& g, NodeId u) {
  if (u < 0 || u >= g.node_count()) throw std::invalid_argument("node out of range");
  LocalView view;
  view.dist.assign(g.node_count(), 4);
  view.dist[u] = 0;
  std::vector<NodeId> frontier{u};
  for (int d = 1; d <= 3; ++d) {
    std::vector<NodeId> next;
    for (NodeId v : frontier) {
      for (NodeId w : g.neighbors(v)) {
        if (view.dist[w] == 4) {
          view.dist[w] = static_cast<std::int8_t>(d);
          next.push_back(w);
        }
      }
    }
    if (d == 2) view.k = static_cast<NodeId>(next.size());
    frontier = std::move(next);
  }
  for (std::int64_t e = 0; e < g.edge_count(); ++e) {
    int a = view.dist[g.edges()[e].u], b = view.dist[g.edges()[e].v];
    if (a > b) std::swap(a, b);
    bool in_eu = (a == 0 && b == 1) || (a == 1 && b == 2) || (a == 2 && b == 3);
    if (in_eu) {
      view.local_edges.push_back(e);
      view.in_a_u.push_back(a == 1 && b == 2);
    }
  }
  return view;
}

}  // namespace

Matching seq_luby_local(const Graph& g, NodeId u, std::uint64_t seed) {
  LocalView view = local_view(g, u);
  Matching m = Matching::empty(g.node_count());
  if (view.local_edges.empty()) return m;

  std::vector<std::size_t> order(view.local_edges.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(Rng::derive(seed, stream::kEdgeOrder, 1));
  rng.shuffle(order);

  std::vector<char> touched(g.node_count(), 0);
  for (std::size_t idx : order) {
    const Edge& ed = g.edges()[view.local_edges[idx]];
    if (!touched[ed.u] && !touched[ed.v] && view.in_a_u[idx]) m.add(ed.u, ed.v, 1);
    touched[ed.u] = touched[ed.v] = 1;
  }
  return m;
}

double tv_distance_estimate(const Graph& g, std::int64_t samples, int c_prime,
                            std::uint64_t seed) {
  if (samples <= 0) throw std::invalid_argument("samples must be positive");
  if (g.edge_count() > 12) {
    throw std::invalid_argument("tv_distance_estimate requires at most 12 edges");
  }
  const std::size_t buckets = std::size_t(1) << g.edge_count();
  std::vector<std::int64_t> hist0(buckets, 0), hist1(buckets, 0);

  std::unordered_map<std::uint64_t, std::int64_t> edge_index;
  for (std::int64_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edges()[e];
    NodeId a = std::min(ed.u, ed.v), b = std::max(ed.u, ed.v);
    edge_index[(std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b)] = e;
  }
  auto key_of = [&](const Matching& m) {
    std::uint32_t key = 0;
    for (const Edge& ed : m.edges) {
      NodeId a = std::min(ed.u, ed.v), b = std::max(ed.u, ed.v);
      key |= 1u << edge_index.at((std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b));
    }
    return key;
  };

  for (std::int64_t i = 0; i < samples; ++i) {
    ++hist0[key_of(luby_round_distributed(g, c_prime, Rng::derive(seed, 1, i)))];
    ++hist1[key_of(luby_round_sequential(g, Rng::derive(seed, 2, i)))];
  }
  double tv = 0.0;
  for (std::size_t b = 0; b < buckets; ++b) {
    tv += std::abs(static_cast<double>(hist0[b]) - static_cast<double>(hist1[b]));
  }
  return tv / static_cast<double>(samples);
}

Graph color_code_bipartize_with(const Graph& g, const std::vector<Side>& colors) {
  if (static_cast<NodeId>(colors.size()) != g.node_count()) {
    throw std::invalid_argument("color vector must cover every node");
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (colors[e.u] != colors[e.v]) kept.push_back(e);
  }
  return Graph(g.node_count(), std::move(kept), colors);
}

Graph color_code_bipartize(const Graph& g, std::uint64_t seed) {
  std::vector<Side> colors(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    colors[v] = Rng(Rng::derive(seed, stream::kNodeColor, v)).coin() ? Side::R : Side::L;
  }
  return color_code_bipartize_with(g, colors);
}

MultiRoundResult multi_round_luby(const Graph& g, std::int32_t rounds, std::uint64_t seed,
                                  const std::vector<ScheduleEntry>* schedule, int c_prime) {
  if (rounds < 0) throw std::invalid_argument("rounds must be non-negative");
  MultiRoundResult result;
  result.matching = Matching::empty(g.node_count());

  Graph cur = g;
  std::vector<NodeId> to_orig(g.node_count());
  std::iota(to_orig.begin(), to_orig.end(), 0);

  for (std::int32_t r = 1; r <= rounds; ++r) {
    Matching local = luby_round_distributed(cur, c_prime, Rng::derive(seed, stream::kRound, r));
    for (const Edge& e : local.edges) {
      result.matching.add(to_orig[e.u], to_orig[e.v], r);
    }

    ResidualGraph res = remove_matched(cur, local);
    std::vector<NodeId> next_map(res.graph.node_count());
    for (NodeId v = 0; v < res.graph.node_count(); ++v) {
      next_map[v] = to_orig[res.new_to_old[v]];
    }
    cur = std::move(res.graph);
    to_orig = std::move(next_map);

    RoundSnapshot snap;
    snap.round_index = r;
    snap.residual_node_count = cur.node_count();
    snap.residual_edge_count = cur.edge_count();
    snap.matched_this_round = static_cast<NodeId>(2 * local.size());
    for (NodeId v = 0; v < cur.node_count(); ++v) ++snap.degree_histogram[cur.degree(v)];
    if (schedule && r <= static_cast<std::int32_t>(schedule->size()) && cur.node_count() > 0) {
      const ScheduleEntry& entry = (*schedule)[r - 1];
      const double lo = entry.delta * (1.0 - entry.alpha);
      const double hi = entry.delta * (1.0 + entry.alpha);
      std::vector<char> deg_ok(cur.node_count());
      for (NodeId v = 0; v < cur.node_count(); ++v) {
        double d = cur.degree(v);
        deg_ok[v] = d >= lo && d <= hi;
      }
      NodeId good = 0;
      for (NodeId v = 0; v < cur.node_count(); ++v) {
        bool ok = deg_ok[v];
        for (NodeId w : cur.neighbors(v)) {
          if (!ok) break;
          if (!deg_ok[w]) {
            ok = false;
            break;
          }
          for (NodeId x : cur.neighbors(w)) {
            if (!deg_ok[x]) {
              ok = false;
              break;
            }
          }
        }
        if (ok) ++good;
      }
      snap.alpha_regular_fraction = static_cast<double>(good) / cur.node_count();
    }
    result.snapshots.push_back(std::move(snap));
  }
  return result;
}

SurvivorTrajectory instrument_survivors(const Graph& g, NodeId u, std::uint64_t seed) {
  LocalView view = local_view(g, u);
  SurvivorTrajectory traj;
  traj.k = view.k;
  traj.local_edge_count = static_cast<std::int64_t>(view.local_edges.size());
  traj.a_u_size =
      std::count(view.in_a_u.begin(), view.in_a_u.end(), static_cast<char>(1));
  const double deg_u = g.degree(u);
  traj.stopping_time =
      deg_u > 1.0 ? static_cast<std::int64_t>(view.k * std::log2(deg_u) / 100.0) : 0;

  const std::size_t le = view.local_edges.size();
  if (le == 0) return traj;

  // Per-node lists of surviving A_u edges, for incremental kill updates.
  std::vector<std::vector<std::int32_t>> a_at(g.node_count());
  std::vector<char> surviving(le, 0);
  std::int64_t alive = 0;
  for (std::size_t i = 0; i < le; ++i) {
    if (!view.in_a_u[i]) continue;
    surviving[i] = 1;
    ++alive;
    const Edge& ed = g.edges()[view.local_edges[i]];
    a_at[ed.u].push_back(static_cast<std::int32_t>(i));
    a_at[ed.v].push_back(static_cast<std::int32_t>(i));
  }

  std::vector<std::size_t> order(le);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(Rng::derive(seed, stream::kEdgeOrder, 2));
  rng.shuffle(order);

  std::vector<char> node_labeled(g.node_count(), 0);
  std::vector<char> touched(g.node_count(), 0);
  NodeId labeled_neighbors = 0;
  std::int64_t matched = 0;

  traj.steps.reserve(le);
  for (std::size_t i = 0; i < le; ++i) {
    SurvivorStep step;
    step.surviving = alive;
    step.q = static_cast<double>(alive) / static_cast<double>(le - i);

    const std::size_t idx = order[i];
    const Edge& ed = g.edges()[view.local_edges[idx]];
    if (!touched[ed.u] && !touched[ed.v] && view.in_a_u[idx]) ++matched;
    touched[ed.u] = touched[ed.v] = 1;
    for (NodeId w : {ed.u, ed.v}) {
      if (!node_labeled[w]) {
        node_labeled[w] = 1;
        if (view.dist[w] == 1) ++labeled_neighbors;
      }
      for (std::int32_t a : a_at[w]) {
        if (surviving[a]) {
          surviving[a] = 0;
          --alive;
        }
      }
      a_at[w].clear();
    }

    step.labeled_neighbors = labeled_neighbors;
    step.matched = matched;
    traj.steps.push_back(step);
  }
  return traj;
}

namespace {

class LubyProcess : public NodeProcess {
 public:
  LubyProcess(NodeId node, NodeId degree, std::uint64_t local_seed, u128 range)
      : node_(node), degree_(degree), rng_(local_seed, stream::kEdgeRank), range_(range) {}

  StepResult on_round(std::span<const Message> inbox) override {
    StepResult step;
    switch (round_++) {
      case 0: {
        if (degree_ == 0) {
          step.output = -1;
          return step;
        }
        step.outbox.assign(degree_, encode_uint(static_cast<std::uint64_t>(node_)));
        return step;
      }
      case 1: {
        neighbor_.resize(degree_);
        rank_.assign(degree_, 0);
        step.outbox.resize(degree_);
        for (NodeId p = 0; p < degree_; ++p) {
          neighbor_[p] = static_cast<NodeId>(decode_uint(inbox[p]));
          if (node_ < neighbor_[p]) {
            rank_[p] = u128(1) + rng_.below128(range_);
            step.outbox[p] = encode_uint(rank_[p]);
          }
        }
        return step;
      }
      case 2: {
        for (NodeId p = 0; p < degree_; ++p) {
          if (node_ > neighbor_[p]) rank_[p] = decode_uint(inbox[p]);
        }
        step.outbox.resize(degree_);
        for (NodeId p = 0; p < degree_; ++p) {
          u128 other = kInf;
          for (NodeId q = 0; q < degree_; ++q) {
            if (q != p) other = std::min(other, rank_[q]);
          }
          if (other != kInf) step.outbox[p] = encode_uint(other);
        }
        return step;
      }
      default: {
        std::int64_t partner = -1;
        for (NodeId p = 0; p < degree_; ++p) {
          u128 mine_other = kInf;
          for (NodeId q = 0; q < degree_; ++q) {
            if (q != p) mine_other = std::min(mine_other, rank_[q]);
          }
          u128 their_other = inbox[p].empty() ? kInf : decode_uint(inbox[p]);
          if (rank_[p] < mine_other && rank_[p] < their_other) {
            partner = neighbor_[p];
            break;
          }
        }
        step.output = partner;
        return step;
      }
    }
  }

 private:
  static constexpr u128 kInf = ~u128(0);
  NodeId node_;
  NodeId degree_;
  Rng rng_;
  u128 range_;
  int round_ = 0;
  std::vector<NodeId> neighbor_;
  std::vector<u128> rank_;
};

}  // namespace

LubyMatchingProgram::LubyMatchingProgram(u128 rank_range) : rank_range_(rank_range) {
  if (rank_range_ == 0) throw std::invalid_argument("rank range must be positive");
}

std::unique_ptr<NodeProcess> LubyMatchingProgram::init(NodeId node, NodeId degree,
                                                       std::uint64_t local_seed) const {
  return std::make_unique<LubyProcess>(node, degree, local_seed, rank_range_);
}

}  // namespace regmatch
