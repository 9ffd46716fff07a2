#include "regmatch/lowerbound.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "regmatch/fast.hpp"
#include "regmatch/luby.hpp"
#include "regmatch/oracle.hpp"
#include "regmatch/rng.hpp"
#include "regmatch/warmup.hpp"

namespace regmatch {

namespace {

Graph with_sides(NodeId n, std::vector<Edge> edges) {
  Graph plain(n, std::move(edges));
  auto sides = try_two_color(plain);
  if (!sides) throw std::logic_error("gadget construction is not bipartite");
  return Graph(plain.node_count(), plain.edges(), std::move(*sides));
}

// Shared skeleton for the cycle-shaped families: slots are the positions of
// the degree-two construction (gadget path nodes and anchors); families
// realize a slot as either one node or one subgadget.
struct CycleLayout {
  std::int32_t r, k, slots;
  std::vector<std::int32_t> orientations;            // per gadget
  std::vector<std::pair<NodeId, NodeId>> slot_edges;
  std::vector<NodeId> innermost_slots;               // per gadget
  std::vector<NodeId> anchor_slots;                  // anchor after gadget i
  std::vector<std::vector<NodeId>> region_slots;     // per gadget pair
};

CycleLayout cycle_layout(std::int32_t r, std::int32_t k, std::uint64_t seed,
                         const std::vector<std::int32_t>* forced) {
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("k must be even and at least 2");

  CycleLayout lay;
  lay.r = r;
  lay.k = k;
  const std::int32_t block = 2 * r + 2;
  lay.slots = k * block;

  if (forced) {
    if (static_cast<std::int32_t>(forced->size()) != k) {
      throw std::invalid_argument("need one orientation per gadget");
    }
    lay.orientations = *forced;
  } else {
    lay.orientations.resize(k);
    for (std::int32_t i = 0; i < k; ++i) {
      lay.orientations[i] =
          Rng(Rng::derive(seed, stream::kGadgetOrient, i)).coin() ? 1 : 0;
    }
  }

  auto base = [&](std::int32_t gadget) { return gadget * block; };
  // Path endpoint facing the anchor after (right) or before (left) the
  // gadget, given its insertion orientation.
  auto right_end = [&](std::int32_t i) {
    return base(i) + (lay.orientations[i] == 0 ? 2 * r : 0);
  };
  auto left_end = [&](std::int32_t i) {
    return base(i) + (lay.orientations[i] == 0 ? 0 : 2 * r);
  };

  for (std::int32_t i = 0; i < k; ++i) {
    for (std::int32_t t = 0; t < 2 * r; ++t) {
      lay.slot_edges.push_back({base(i) + t, base(i) + t + 1});
    }
    NodeId anchor = base(i) + 2 * r + 1;
    lay.anchor_slots.push_back(anchor);
    lay.innermost_slots.push_back(base(i) + r);
    lay.slot_edges.push_back({anchor, right_end(i)});
    lay.slot_edges.push_back({anchor, left_end((i + 1) % k)});
  }

  for (std::int32_t p = 0; p < k / 2; ++p) {
    std::int32_t a = 2 * p, b = 2 * p + 1;
    std::vector<NodeId> region;
    // From the innermost slot of gadget a out through its right end...
    if (lay.orientations[a] == 0) {
      for (std::int32_t t = r; t <= 2 * r; ++t) region.push_back(base(a) + t);
    } else {
      for (std::int32_t t = r; t >= 0; --t) region.push_back(base(a) + t);
    }
    region.push_back(lay.anchor_slots[a]);  // the shared anchor
    // ...and into gadget b's left end up to its innermost slot.
    if (lay.orientations[b] == 0) {
      for (std::int32_t t = 0; t <= r; ++t) region.push_back(base(b) + t);
    } else {
      for (std::int32_t t = 2 * r; t >= r; --t) region.push_back(base(b) + t);
    }
    lay.region_slots.push_back(std::move(region));
  }
  return lay;
}

}  // namespace

std::pair<std::int32_t, std::int32_t> decompose_degree(std::int32_t delta) {
  if (delta < 2) throw std::invalid_argument("delta must be at least 2");
  if (delta % 2 == 0) return {0, delta / 2};
  return {1, (delta - 3) / 2};
}

LowerBoundInstance build_cycle_instance(std::int32_t r, std::int32_t k, std::uint64_t seed,
                                        const std::vector<std::int32_t>* forced) {
  CycleLayout lay = cycle_layout(r, k, seed, forced);
  LowerBoundInstance inst;
  inst.family = GadgetFamily::Cycle;
  inst.params.delta = 2;
  inst.params.r = r;
  inst.params.k = k;
  inst.orientations = lay.orientations;
  inst.innermost_nodes = lay.innermost_slots;
  inst.anchor_nodes = lay.anchor_slots;
  inst.failure_regions = lay.region_slots;

  std::vector<Edge> edges;
  edges.reserve(lay.slot_edges.size());
  for (auto [a, b] : lay.slot_edges) edges.push_back({a, b});
  inst.graph = with_sides(lay.slots, std::move(edges));
  return inst;
}

LowerBoundInstance build_even_degree_instance(std::int32_t delta, std::int32_t r,
                                              std::int32_t k, std::uint64_t seed,
                                              const std::vector<std::int32_t>* forced) {
  if (delta < 2 || delta % 2 != 0) throw std::invalid_argument("delta must be even and >= 2");
  CycleLayout lay = cycle_layout(r, k, seed, forced);

  const std::int32_t block = 2 * delta + 1;
  auto ell = [&](NodeId slot, std::int32_t j) {  // j in 1..delta
    return slot * block + (j - 1);
  };
  auto rr = [&](NodeId slot, std::int32_t j) {  // j in 1..delta+1
    return slot * block + delta + (j - 1);
  };

  std::vector<Edge> edges;
  // Subgadget internals: ell_j' -- r_j unless j' in {2j-1, 2j}.
  for (NodeId slot = 0; slot < lay.slots; ++slot) {
    for (std::int32_t j = 1; j <= delta + 1; ++j) {
      for (std::int32_t jp = 1; jp <= delta; ++jp) {
        if (jp == 2 * j - 1 || jp == 2 * j) continue;
        edges.push_back({ell(slot, jp), rr(slot, j)});
      }
    }
  }
  // Each virtual cycle edge becomes delta/2 external edges r_c -- r_c.
  for (auto [a, b] : lay.slot_edges) {
    for (std::int32_t c = 1; c <= delta / 2; ++c) {
      edges.push_back({rr(a, c), rr(b, c)});
    }
  }

  LowerBoundInstance inst;
  inst.family = GadgetFamily::EvenDegree;
  inst.params.delta = delta;
  inst.params.r = r;
  inst.params.k = k;
  inst.orientations = lay.orientations;
  for (NodeId slot : lay.innermost_slots) inst.innermost_nodes.push_back(rr(slot, delta + 1));
  for (NodeId slot : lay.anchor_slots) inst.anchor_nodes.push_back(rr(slot, delta + 1));
  for (const auto& slots : lay.region_slots) {
    std::vector<NodeId> region;
    for (NodeId slot : slots) {
      for (std::int32_t t = 0; t < block; ++t) region.push_back(slot * block + t);
    }
    inst.failure_regions.push_back(std::move(region));
  }
  inst.graph = with_sides(lay.slots * block, std::move(edges));
  return inst;
}

namespace {

// Blue and red port patterns of the degree-5 base graph, (j, j') pairs from
// layer i to layer i+1, 1-based.
constexpr std::int32_t kBlue[6][2] = {{1, 1}, {2, 1}, {2, 2}, {3, 3}, {4, 3}, {4, 4}};
constexpr std::int32_t kRed[4][2] = {{1, 2}, {2, 3}, {3, 4}, {4, 1}};

constexpr std::int32_t kPerm3[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                       {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

struct BaseEdge {
  NodeId even_node;
  NodeId odd_node;
  bool blue;
};

}  // namespace

LowerBoundInstance build_general_degree_instance(std::int32_t delta, std::int32_t rho,
                                                 std::int32_t k, std::uint64_t seed,
                                                 const std::vector<std::int32_t>* forced) {
  if (rho < 2 || rho % 2 != 0) throw std::invalid_argument("rho must be even and >= 2");
  if (k < 4 || k % 4 != 0) throw std::invalid_argument("k must be a positive multiple of 4");
  auto [x, y] = decompose_degree(delta);

  // Layers are 1-based so the quoted port patterns apply verbatim.
  auto base_id = [&](std::int32_t layer, std::int32_t j) {  // layer 1..k, j 1..4
    return static_cast<NodeId>((layer - 1) * 4 + (j - 1));
  };
  const std::int64_t body = static_cast<std::int64_t>(delta) * rho;
  auto sub_id = [&](std::int64_t se, std::int32_t t, std::int32_t c) {  // t 1..rho, c 1..delta
    return static_cast<NodeId>(4 * static_cast<std::int64_t>(k) + se * body +
                               static_cast<std::int64_t>(t - 1) * delta + (c - 1));
  };

  std::vector<BaseEdge> base_edges;
  for (std::int32_t layer = 1; layer <= k; ++layer) {
    std::int32_t next = layer % k + 1;
    bool layer_even = layer % 2 == 0;
    for (const auto& jj : kBlue) {
      NodeId a = base_id(layer, jj[0]), b = base_id(next, jj[1]);
      base_edges.push_back({layer_even ? a : b, layer_even ? b : a, true});
    }
    for (const auto& jj : kRed) {
      NodeId a = base_id(layer, jj[0]), b = base_id(next, jj[1]);
      base_edges.push_back({layer_even ? a : b, layer_even ? b : a, false});
    }
  }

  const NodeId n =
      static_cast<NodeId>(4 * static_cast<std::int64_t>(k) + 10 * static_cast<std::int64_t>(k) * body);

  std::vector<Edge> edges;
  // Subgadget internals plus the even-side attachment; the odd-side
  // attachment happens below after the per-gadget permutations.
  for (std::size_t se = 0; se < base_edges.size(); ++se) {
    std::int32_t z = base_edges[se].blue ? x : y;
    for (std::int32_t t = 1; t < rho; ++t) {
      if (t % 2 == 1) {
        for (std::int32_t a = 1; a <= delta; ++a) {
          for (std::int32_t b = 1; b <= delta; ++b) {
            if (a == b && a <= z) continue;
            edges.push_back({sub_id(se, t, a), sub_id(se, t + 1, b)});
          }
        }
      } else {
        for (std::int32_t a = 1; a <= z; ++a) {
          edges.push_back({sub_id(se, t, a), sub_id(se, t + 1, a)});
        }
      }
    }
    for (std::int32_t c = 1; c <= z; ++c) {
      edges.push_back({base_edges[se].even_node, sub_id(se, 1, c)});
    }
  }

  // Gadget = even base node + its five subgadgets; permute same-color
  // bodies across their anchors.
  std::vector<std::int32_t> orientations;
  std::vector<NodeId> even_nodes;
  for (std::int32_t layer = 2; layer <= k; layer += 2) {
    for (std::int32_t j = 1; j <= 4; ++j) even_nodes.push_back(base_id(layer, j));
  }
  std::vector<std::vector<std::int64_t>> blue_of(n), red_of(n);
  for (std::size_t se = 0; se < base_edges.size(); ++se) {
    auto& bucket = base_edges[se].blue ? blue_of : red_of;
    bucket[base_edges[se].even_node].push_back(static_cast<std::int64_t>(se));
  }
  if (forced && forced->size() != even_nodes.size()) {
    throw std::invalid_argument("need one orientation per even-layer node");
  }
  for (std::size_t gi = 0; gi < even_nodes.size(); ++gi) {
    NodeId u = even_nodes[gi];
    std::int32_t pb, pr;
    if (forced) {
      pb = (*forced)[gi] / 2;
      pr = (*forced)[gi] % 2;
      if (pb < 0 || pb > 5 || pr < 0) throw std::invalid_argument("bad orientation value");
    } else {
      Rng rng(Rng::derive(seed, stream::kGadgetOrient, gi));
      pb = static_cast<std::int32_t>(rng.below(6));
      pr = static_cast<std::int32_t>(rng.below(2));
    }
    orientations.push_back(pb * 2 + pr);

    const auto& blues = blue_of[u];
    const auto& reds = red_of[u];
    for (std::int32_t m = 0; m < 3; ++m) {
      std::int64_t se = blues[m];
      NodeId anchor = base_edges[blues[kPerm3[pb][m]]].odd_node;
      for (std::int32_t c = 1; c <= x; ++c) edges.push_back({anchor, sub_id(se, rho, c)});
    }
    for (std::int32_t m = 0; m < 2; ++m) {
      std::int64_t se = reds[m];
      NodeId anchor = base_edges[reds[pr == 0 ? m : 1 - m]].odd_node;
      for (std::int32_t c = 1; c <= y; ++c) edges.push_back({anchor, sub_id(se, rho, c)});
    }
  }

  LowerBoundInstance inst;
  inst.family = GadgetFamily::GeneralDegree;
  inst.params.delta = delta;
  inst.params.rho = rho;
  inst.params.k = k;
  inst.params.x = x;
  inst.params.y = y;
  inst.orientations = std::move(orientations);

  // Gadget groups: centers v^{4i-2,{1,2,4}} and v^{4i,{1,2}} with anchor
  // v^{4i-1,1}.
  std::vector<std::vector<std::int64_t>> bodies_of(n);
  for (std::size_t se = 0; se < base_edges.size(); ++se) {
    bodies_of[base_edges[se].even_node].push_back(static_cast<std::int64_t>(se));
  }
  for (std::int32_t i = 1; i <= k / 4; ++i) {
    std::vector<NodeId> centers = {base_id(4 * i - 2, 1), base_id(4 * i - 2, 2),
                                   base_id(4 * i - 2, 4), base_id(4 * i, 1),
                                   base_id(4 * i, 2)};
    std::vector<NodeId> region;
    for (NodeId c : centers) {
      inst.innermost_nodes.push_back(c);
      region.push_back(c);
      for (std::int64_t se : bodies_of[c]) {
        for (std::int32_t t = 1; t <= rho; ++t) {
          for (std::int32_t cc = 1; cc <= delta; ++cc) region.push_back(sub_id(se, t, cc));
        }
      }
    }
    NodeId anchor = base_id(4 * i - 1, 1);
    inst.anchor_nodes.push_back(anchor);
    region.push_back(anchor);
    inst.failure_regions.push_back(std::move(region));
  }

  inst.graph = with_sides(n, std::move(edges));
  return inst;
}

namespace {

LowerBoundInstance rebuild(const LowerBoundInstance& inst, std::uint64_t orient_seed) {
  switch (inst.family) {
    case GadgetFamily::Cycle:
      return build_cycle_instance(inst.params.r, inst.params.k, orient_seed);
    case GadgetFamily::EvenDegree:
      return build_even_degree_instance(inst.params.delta, inst.params.r, inst.params.k,
                                        orient_seed);
    case GadgetFamily::GeneralDegree:
      return build_general_degree_instance(inst.params.delta, inst.params.rho, inst.params.k,
                                           orient_seed);
  }
  throw std::logic_error("unknown gadget family");
}

Matching run_algo(const Graph& g, AdversaryAlgo algo, std::int32_t budget, std::uint64_t seed,
                  const AdversaryOptions& options) {
  switch (algo) {
    case AdversaryAlgo::LubyMulti:
      return multi_round_luby(g, budget, seed, nullptr, options.c_prime).matching;
    case AdversaryAlgo::Fast: {
      FastOptions fo;
      fo.c_prime = options.c_prime;
      fo.max_rounds = budget;
      return approx_match_fast(g, options.fast_eps, seed, fo).matching;
    }
    case AdversaryAlgo::Warmup: {
      WarmupOptions wo;
      wo.phase_limit = budget;
      wo.internal_eps = options.warmup_internal_eps;
      return warmup_full(g, options.warmup_eps, seed, wo).matching;
    }
  }
  throw std::logic_error("unknown adversary algorithm");
}

}  // namespace

AdversaryReport adversary_trial(const LowerBoundInstance& inst, AdversaryAlgo algo,
                                std::int32_t round_budget, std::int32_t trials,
                                std::uint64_t seed, const AdversaryOptions& options) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  if (round_budget <= 0) throw std::invalid_argument("round budget must be positive");

  AdversaryReport report;
  report.opt = inst.graph.node_count() / 2;
  for (std::int32_t t = 0; t < trials; ++t) {
    LowerBoundInstance fresh = rebuild(inst, Rng::derive(seed, stream::kGadgetOrient, t));
    Matching m = run_algo(fresh.graph, algo, round_budget,
                          Rng::derive(seed, stream::kTrial, t), options);

    AdversaryTrialRecord rec;
    for (NodeId v = 0; v < fresh.graph.node_count(); ++v) {
      if (!m.covers(v)) ++rec.unmatched;
    }
    std::int32_t failures = 0;
    for (const auto& region : fresh.failure_regions) {
      for (NodeId v : region) {
        if (!m.covers(v)) {
          ++failures;
          break;
        }
      }
    }
    rec.pair_failure_fraction =
        fresh.failure_regions.empty()
            ? 0.0
            : static_cast<double>(failures) / static_cast<double>(fresh.failure_regions.size());
    rec.ratio = m.size() == 0 ? std::numeric_limits<double>::infinity()
                              : static_cast<double>(report.opt) / static_cast<double>(m.size());
    report.mean_unmatched += static_cast<double>(rec.unmatched);
    report.mean_pair_failure += rec.pair_failure_fraction;
    report.mean_ratio += rec.ratio;
    report.trials.push_back(rec);
  }
  report.mean_unmatched /= trials;
  report.mean_pair_failure /= trials;
  report.mean_ratio /= trials;
  return report;
}

void export_instance(const LowerBoundInstance& inst, const std::string& graph_path,
                     const std::string& meta_path) {
  save_edge_list_file(inst.graph, graph_path);

  nlohmann::json meta;
  switch (inst.family) {
    case GadgetFamily::Cycle:
      meta["family"] = "cycle";
      break;
    case GadgetFamily::EvenDegree:
      meta["family"] = "even_degree";
      break;
    case GadgetFamily::GeneralDegree:
      meta["family"] = "general_degree";
      break;
  }
  meta["params"] = {{"delta", inst.params.delta}, {"r", inst.params.r},
                    {"rho", inst.params.rho},     {"k", inst.params.k},
                    {"x", inst.params.x},         {"y", inst.params.y}};
  meta["orientations"] = inst.orientations;
  meta["innermost_nodes"] = inst.innermost_nodes;
  meta["anchor_nodes"] = inst.anchor_nodes;
  meta["failure_regions"] = inst.failure_regions;

  std::ofstream out(meta_path);
  if (!out) throw std::runtime_error("cannot open " + meta_path);
  out << meta.dump(2) << '\n';
}

}  // namespace regmatch
