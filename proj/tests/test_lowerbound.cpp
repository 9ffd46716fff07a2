#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "regmatch/lowerbound.hpp"
#include "regmatch/oracle.hpp"

using namespace regmatch;

namespace {

using EdgeSet = std::set<std::pair<NodeId, NodeId>>;

EdgeSet edge_set(const Graph& g) {
  EdgeSet s;
  for (const Edge& e : g.edges()) {
    s.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  return s;
}

EdgeSet mapped(const EdgeSet& s, const std::vector<NodeId>& phi) {
  EdgeSet out;
  for (auto [u, v] : s) {
    NodeId a = phi[u], b = phi[v];
    out.insert({std::min(a, b), std::max(a, b)});
  }
  return out;
}

void check_family_shape(const LowerBoundInstance& inst, NodeId n, NodeId delta) {
  DegreeReport rep = validate(inst.graph);
  CHECK(inst.graph.node_count() == n);
  CHECK(rep.is_regular);
  CHECK(*rep.regular_degree == delta);
  CHECK(rep.is_bipartite);
}

}  // namespace

TEST_CASE("decompose_degree rules and exhaustive identity") {
  CHECK(decompose_degree(2) == std::pair<std::int32_t, std::int32_t>(0, 1));
  CHECK(decompose_degree(3) == std::pair<std::int32_t, std::int32_t>(1, 0));
  CHECK(decompose_degree(7) == std::pair<std::int32_t, std::int32_t>(1, 2));
  CHECK_THROWS_AS(decompose_degree(1), std::invalid_argument);
  for (std::int32_t d = 2; d <= 10000; ++d) {
    auto [x, y] = decompose_degree(d);
    CHECK(3 * x + 2 * y == d);
    CHECK(x >= 0);
    CHECK(y >= 0);
  }
}

TEST_CASE("cycle instance node counts and structure") {
  LowerBoundInstance small = build_cycle_instance(1, 2, 5);
  check_family_shape(small, 8, 2);
  CHECK(small.innermost_nodes.size() == 2);
  CHECK(small.anchor_nodes.size() == 2);
  CHECK(small.failure_regions.size() == 1);

  check_family_shape(build_cycle_instance(1, 4, 6), 16, 2);
  check_family_shape(build_cycle_instance(3, 40, 7), 320, 2);
}

TEST_CASE("cycle instance parity errors") {
  CHECK_THROWS_AS(build_cycle_instance(1, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_cycle_instance(0, 2, 1), std::invalid_argument);
}

TEST_CASE("even-degree instance node counts") {
  check_family_shape(build_even_degree_instance(2, 1, 2, 9), 2 * 4 * 5, 2);
  check_family_shape(build_even_degree_instance(4, 1, 2, 9), 2 * 4 * 9, 4);
  check_family_shape(build_even_degree_instance(4, 2, 4, 9), 4 * 6 * 9, 4);
  check_family_shape(build_even_degree_instance(6, 1, 2, 9), 2 * 4 * 13, 6);
  CHECK_THROWS_AS(build_even_degree_instance(3, 1, 2, 9), std::invalid_argument);
  CHECK_THROWS_AS(build_even_degree_instance(4, 1, 3, 9), std::invalid_argument);
}

TEST_CASE("general-degree instance node counts, including the z=0 corner") {
  check_family_shape(build_general_degree_instance(3, 2, 4, 11), 16 + 40 * 6, 3);
  check_family_shape(build_general_degree_instance(5, 2, 4, 11), 16 + 40 * 10, 5);
  check_family_shape(build_general_degree_instance(2, 2, 4, 11), 16 + 40 * 4, 2);
  check_family_shape(build_general_degree_instance(4, 2, 4, 11), 16 + 40 * 8, 4);
  check_family_shape(build_general_degree_instance(3, 4, 4, 11), 16 + 40 * 12, 3);
  CHECK_THROWS_AS(build_general_degree_instance(3, 3, 4, 11), std::invalid_argument);
  CHECK_THROWS_AS(build_general_degree_instance(3, 2, 6, 11), std::invalid_argument);
}

TEST_CASE("cycle gadget flip is an explicit isomorphism") {
  const std::int32_t r = 2, k = 4;
  std::vector<std::int32_t> base_orient = {0, 1, 0, 0};
  std::vector<std::int32_t> flipped = base_orient;
  flipped[0] = 1;
  LowerBoundInstance a = build_cycle_instance(r, k, 0, &base_orient);
  LowerBoundInstance b = build_cycle_instance(r, k, 0, &flipped);

  // phi reverses gadget 0's path nodes and fixes everything else.
  std::vector<NodeId> phi(a.graph.node_count());
  for (NodeId v = 0; v < a.graph.node_count(); ++v) phi[v] = v;
  for (std::int32_t t = 0; t <= 2 * r; ++t) phi[t] = 2 * r - t;
  CHECK(mapped(edge_set(a.graph), phi) == edge_set(b.graph));
}

TEST_CASE("even-degree gadget flip is an explicit isomorphism") {
  const std::int32_t delta = 4, r = 1, k = 2;
  std::vector<std::int32_t> base_orient = {0, 0};
  std::vector<std::int32_t> flipped = {1, 0};
  LowerBoundInstance a = build_even_degree_instance(delta, r, k, 0, &base_orient);
  LowerBoundInstance b = build_even_degree_instance(delta, r, k, 0, &flipped);

  const std::int32_t block = 2 * delta + 1;
  std::vector<NodeId> phi(a.graph.node_count());
  for (NodeId v = 0; v < a.graph.node_count(); ++v) phi[v] = v;
  // Slot t of gadget 0 maps to slot 2r-t, node offsets preserved.
  for (std::int32_t t = 0; t <= 2 * r; ++t) {
    for (std::int32_t j = 0; j < block; ++j) {
      phi[t * block + j] = (2 * r - t) * block + j;
    }
  }
  CHECK(mapped(edge_set(a.graph), phi) == edge_set(b.graph));
}

TEST_CASE("general-degree blue swap is an explicit isomorphism") {
  const std::int32_t delta = 3, rho = 2, k = 4;
  // Even-layer nodes in builder order: layers 2 and 4, j = 1..4.
  std::vector<std::int32_t> ident(8, 0);
  std::vector<std::int32_t> swapped = ident;
  swapped[0] = 2 * 2;  // blue permutation {1,0,2} at the first gadget
  LowerBoundInstance a = build_general_degree_instance(delta, rho, k, 0, &ident);
  LowerBoundInstance b = build_general_degree_instance(delta, rho, k, 0, &swapped);

  // Bodies are enumerated (layer-1)*10 + position: 6 blues then 4 reds per
  // layer. Gadget at v^{2,1} owns blue bodies se = 0 (from (1,1) of layer
  // 1), se = 1 (from (2,1) of layer 1) and se = 10 (to (1,1) of layer 2).
  // Swapping the anchors of its first two bodies equals exchanging the two
  // body node blocks.
  const std::int64_t body = static_cast<std::int64_t>(delta) * rho;
  auto body_start = [&](std::int64_t se) { return 4 * k + se * body; };
  std::vector<NodeId> phi(a.graph.node_count());
  for (NodeId v = 0; v < a.graph.node_count(); ++v) phi[v] = v;
  for (std::int64_t j = 0; j < body; ++j) {
    phi[body_start(0) + j] = static_cast<NodeId>(body_start(1) + j);
    phi[body_start(1) + j] = static_cast<NodeId>(body_start(0) + j);
  }
  CHECK(mapped(edge_set(a.graph), phi) == edge_set(b.graph));
}

TEST_CASE("small instances admit perfect matchings (OPT = n/2)") {
  LowerBoundInstance cyc = build_cycle_instance(1, 2, 3);
  CHECK(max_matching_bipartite(cyc.graph).matching.size() == cyc.graph.node_count() / 2);
  LowerBoundInstance even = build_even_degree_instance(2, 1, 2, 3);
  CHECK(max_matching_bipartite(even.graph).matching.size() == even.graph.node_count() / 2);
  LowerBoundInstance gen = build_general_degree_instance(2, 2, 4, 3);
  CHECK(max_matching_bipartite(gen.graph).matching.size() == gen.graph.node_count() / 2);
}

TEST_CASE("orientations vary with the seed and are recorded") {
  std::set<std::vector<std::int32_t>> seen;
  for (std::uint64_t s = 0; s < 12; ++s) {
    seen.insert(build_cycle_instance(2, 6, s).orientations);
  }
  CHECK(seen.size() >= 4);
}

TEST_CASE("failure regions stay inside the graph and cover both innermost nodes") {
  LowerBoundInstance inst = build_cycle_instance(3, 8, 21);
  REQUIRE(inst.failure_regions.size() == 4);
  for (std::size_t p = 0; p < inst.failure_regions.size(); ++p) {
    const auto& region = inst.failure_regions[p];
    CHECK(region.size() == 2 * 3 + 3);  // 2r+3 nodes between and including innermost
    std::set<NodeId> nodes(region.begin(), region.end());
    CHECK(nodes.size() == region.size());
    CHECK(nodes.count(inst.innermost_nodes[2 * p]));
    CHECK(nodes.count(inst.innermost_nodes[2 * p + 1]));
    for (NodeId v : region) {
      CHECK(v >= 0);
      CHECK(v < inst.graph.node_count());
    }
  }
}

TEST_CASE("adversary: generous budget and an exact-capable algorithm make no mistakes") {
  // Augmenting-path exhaustion with k >= n is exact by Berge's theorem;
  // the budget just needs to cover enough phases at this tau.
  LowerBoundInstance inst = build_cycle_instance(1, 2, 5);
  AdversaryOptions opts;
  opts.warmup_eps = Rational(1, 10);
  opts.warmup_internal_eps = Rational(2, 5);  // k = 11 covers every path of C_8
  AdversaryReport rep = adversary_trial(inst, AdversaryAlgo::Warmup, 50000, 3, 7, opts);
  CHECK(rep.opt == 4);
  CHECK(rep.mean_unmatched == doctest::Approx(0.0));
  CHECK(rep.mean_pair_failure == doctest::Approx(0.0));
  for (const auto& t : rep.trials) CHECK(t.ratio == doctest::Approx(1.0));
}

TEST_CASE("adversary: truncated Luby leaves failures on the cycle instance") {
  LowerBoundInstance inst = build_cycle_instance(3, 8, 5);
  AdversaryReport rep = adversary_trial(inst, AdversaryAlgo::LubyMulti, 3, 25, 9);
  CHECK(rep.mean_pair_failure >= 0.0);
  CHECK(rep.mean_pair_failure <= 1.0);
  CHECK(rep.mean_ratio >= 1.0);
  CHECK(static_cast<std::int64_t>(rep.trials.size()) == 25);
}

TEST_CASE("adversary: fast algorithm respects the round budget") {
  LowerBoundInstance inst = build_even_degree_instance(4, 1, 2, 5);
  AdversaryOptions opts;
  opts.fast_eps = 0.05;
  AdversaryReport rep = adversary_trial(inst, AdversaryAlgo::Fast, 1, 5, 11, opts);
  CHECK(rep.trials.size() == 5);
  for (const auto& t : rep.trials) CHECK(t.ratio > 1.0);  // one round cannot be perfect
}

TEST_CASE("export writes the edge list and the sidecar") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "regmatch_lb_test";
  fs::create_directories(dir);
  LowerBoundInstance inst = build_cycle_instance(1, 4, 3);
  export_instance(inst, (dir / "g.edges").string(), (dir / "g.json").string());

  Graph loaded = load_edge_list_file((dir / "g.edges").string());
  CHECK(loaded.node_count() == inst.graph.node_count());
  CHECK(loaded.has_sides());

  std::ifstream meta(dir / "g.json");
  std::string text((std::istreambuf_iterator<char>(meta)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"family\": \"cycle\"") != std::string::npos);
  CHECK(text.find("orientations") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("rebuilding from recorded orientations reproduces the graph") {
  LowerBoundInstance inst = build_general_degree_instance(3, 2, 4, 77);
  LowerBoundInstance again =
      build_general_degree_instance(3, 2, 4, 0, &inst.orientations);
  CHECK(edge_set(inst.graph) == edge_set(again.graph));
}
