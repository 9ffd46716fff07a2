#include "regmatch/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "regmatch/rng.hpp"

namespace regmatch {

void check_hypergraph(const Hypergraph& h) {
  if (h.node_count < 0) throw std::invalid_argument("negative node count");
  for (const auto& he : h.hyperedges) {
    if (he.size() < 2) throw std::invalid_argument("hyperedge with fewer than 2 nodes");
    if (static_cast<NodeId>(he.size()) > h.f_bound) {
      throw std::invalid_argument("hyperedge larger than f_bound");
    }
    std::vector<NodeId> sorted(he);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("hyperedge with repeated node");
    }
    if (sorted.front() < 0 || sorted.back() >= h.node_count) {
      throw std::invalid_argument("hyperedge node out of range");
    }
  }
}

std::vector<double> incident_weight(const Hypergraph& h, const FractionalMatching& x) {
  std::vector<double> sums(h.node_count, 0.0);
  for (std::size_t e = 0; e < h.hyperedges.size(); ++e) {
    for (NodeId v : h.hyperedges[e]) sums[v] += x.weight[e];
  }
  return sums;
}

FractionalMatching fractional_hypergraph_matching(const Hypergraph& h, double eps_fm) {
  check_hypergraph(h);
  if (!(eps_fm > 0.0) || !(eps_fm <= 1.0)) {
    throw std::invalid_argument("eps_fm must be in (0,1]");
  }
  const std::size_t ec = h.hyperedges.size();
  FractionalMatching x;
  x.weight.assign(ec, 0.0);
  if (ec == 0) return x;

  const double f = static_cast<double>(h.f_bound);
  const double eta = eps_fm / f;
  const double theta = f / (f + eps_fm);  // saturation threshold; (1+eta)*theta == 1
  const double theta_test = theta * (1.0 - 1e-12);

  std::vector<std::int32_t> live_count(h.node_count, 0);
  std::vector<double> frozen_sum(h.node_count, 0.0);
  for (const auto& he : h.hyperedges) {
    for (NodeId v : he) ++live_count[v];
  }
  std::int32_t maxdeg = *std::max_element(live_count.begin(), live_count.end());
  const double x0 = theta / static_cast<double>(maxdeg);

  // All live hyperedges share the weight x0 * (1+eta)^step, so a node's
  // incident sum is frozen_sum + live_count * live_weight.
  std::vector<char> frozen(ec, 0);
  std::size_t frozen_edges = 0;
  double live_weight = x0;
  std::vector<std::vector<std::int32_t>> incident(h.node_count);
  for (std::size_t e = 0; e < ec; ++e) {
    for (NodeId v : h.hyperedges[e]) incident[v].push_back(static_cast<std::int32_t>(e));
  }

  while (frozen_edges < ec) {
    bool froze = false;
    for (NodeId v = 0; v < h.node_count; ++v) {
      if (live_count[v] == 0) continue;
      if (frozen_sum[v] + live_count[v] * live_weight < theta_test) continue;
      froze = true;
      for (std::int32_t e : incident[v]) {
        if (frozen[e]) continue;
        frozen[e] = 1;
        ++frozen_edges;
        x.weight[e] = live_weight;
        for (NodeId w : h.hyperedges[e]) {
          frozen_sum[w] += live_weight;
          --live_count[w];
        }
      }
    }
    if (frozen_edges == ec) break;
    if (!froze) live_weight *= 1.0 + eta;
  }

  // Saturating pass: grow weights into any remaining slack, capped at 1.
  std::vector<double> sums = incident_weight(h, x);
  for (std::size_t e = 0; e < ec; ++e) {
    double slack = 1.0 - x.weight[e];
    for (NodeId v : h.hyperedges[e]) slack = std::min(slack, 1.0 - sums[v]);
    if (slack > 0.0) {
      x.weight[e] += slack;
      for (NodeId v : h.hyperedges[e]) sums[v] += slack;
    }
  }

  // Guard against float drift pushing a node constraint past 1.
  double worst = 0.0;
  for (NodeId v = 0; v < h.node_count; ++v) worst = std::max(worst, sums[v]);
  if (worst > 1.0) {
    for (double& w : x.weight) w /= worst;
  }
  return x;
}

std::vector<std::int32_t> round_fractional(const Hypergraph& h, const FractionalMatching& x,
                                           double tau, std::uint64_t seed) {
  check_hypergraph(h);
  if (x.weight.size() != h.hyperedges.size()) {
    throw std::invalid_argument("weight vector size mismatch");
  }
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");

  std::vector<std::vector<std::int32_t>> incident(h.node_count);
  for (std::size_t e = 0; e < h.hyperedges.size(); ++e) {
    for (NodeId v : h.hyperedges[e]) incident[v].push_back(static_cast<std::int32_t>(e));
  }
  for (NodeId v = 0; v < h.node_count; ++v) {
    double s = 0.0;
    for (std::int32_t e : incident[v]) s += x.weight[e];
    if (tau * s > 1.0 + 1e-9) {
      throw std::invalid_argument("probability overflow: tau * incident weight exceeds 1");
    }
  }

  // draw[v]: index of the hyperedge v picked, or -1 for the null symbol.
  constexpr std::int32_t kNone = -1;
  constexpr std::int32_t kConflict = -2;
  std::vector<std::int32_t> draw(h.node_count, kNone);
  for (NodeId v = 0; v < h.node_count; ++v) {
    if (incident[v].empty()) continue;
    Rng rng(Rng::derive(seed, stream::kRounding, static_cast<std::uint64_t>(v)));
    double r = rng.unit();
    double acc = 0.0;
    for (std::int32_t e : incident[v]) {
      acc += tau * x.weight[e];
      if (r < acc) {
        draw[v] = e;
        break;
      }
    }
  }

  // cover[w]: the unique hyperedge claiming w, or kConflict.
  std::vector<std::int32_t> cover(h.node_count, kNone);
  for (NodeId v = 0; v < h.node_count; ++v) {
    if (draw[v] == kNone) continue;
    for (NodeId w : h.hyperedges[draw[v]]) {
      if (cover[w] == kNone) {
        cover[w] = draw[v];
      } else if (cover[w] != draw[v]) {
        cover[w] = kConflict;
      }
    }
  }

  std::vector<std::int32_t> kept;
  for (std::size_t e = 0; e < h.hyperedges.size(); ++e) {
    bool ok = true;
    for (NodeId w : h.hyperedges[e]) {
      if (cover[w] != static_cast<std::int32_t>(e)) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(static_cast<std::int32_t>(e));
  }
  return kept;
}

}  // namespace regmatch
