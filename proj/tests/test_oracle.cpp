#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "regmatch/luby.hpp"
#include "regmatch/oracle.hpp"
#include "regmatch/rng.hpp"

using namespace regmatch;

namespace {

Graph path_graph(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.push_back({v, static_cast<NodeId>(v + 1)});
  return Graph(n, std::move(edges));
}

Graph cycle_graph(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) edges.push_back({v, static_cast<NodeId>((v + 1) % n)});
  return Graph(n, std::move(edges));
}

Graph complete_bipartite(NodeId a, NodeId b) {
  std::vector<Edge> edges;
  for (NodeId l = 0; l < a; ++l) {
    for (NodeId r = a; r < a + b; ++r) edges.push_back({l, r});
  }
  return Graph(a + b, std::move(edges));
}

Graph petersen() {
  std::vector<Edge> edges;
  for (NodeId v = 0; v < 5; ++v) {
    edges.push_back({v, static_cast<NodeId>((v + 1) % 5)});             // outer C_5
    edges.push_back({static_cast<NodeId>(v + 5),
                     static_cast<NodeId>((v + 2) % 5 + 5)});            // inner pentagram
    edges.push_back({v, static_cast<NodeId>(v + 5)});                   // spokes
  }
  return Graph(10, std::move(edges));
}

// Brute force over all edge subsets (test oracle for tiny graphs).
int brute_max_matching(const Graph& g) {
  int m = static_cast<int>(g.edge_count());
  REQUIRE(m <= 20);
  int best = 0;
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::set<NodeId> used;
    bool ok = true;
    int size = 0;
    for (int e = 0; e < m && ok; ++e) {
      if (!(mask & (1 << e))) continue;
      ++size;
      ok = used.insert(g.edges()[e].u).second && used.insert(g.edges()[e].v).second;
    }
    if (ok) best = std::max(best, size);
  }
  return best;
}

}  // namespace

TEST_CASE("bipartite oracle on the staples") {
  CHECK(max_matching_bipartite(cycle_graph(6)).matching.size() == 3);
  CHECK(max_matching_bipartite(complete_bipartite(3, 3)).matching.size() == 3);
  CHECK(max_matching_bipartite(path_graph(4)).matching.size() == 2);
  CHECK_THROWS_AS(max_matching_bipartite(cycle_graph(5)), std::invalid_argument);
}

TEST_CASE("bipartite oracle vs brute force on random bipartite graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed, 4);
    NodeId a = 2 + static_cast<NodeId>(rng.below(3));
    NodeId b = 2 + static_cast<NodeId>(rng.below(3));
    std::vector<Edge> edges;
    for (NodeId l = 0; l < a; ++l) {
      for (NodeId r = a; r < a + b; ++r) {
        if (rng.coin()) edges.push_back({l, r});
      }
    }
    if (static_cast<int>(edges.size()) > 20) continue;
    Graph g(a + b, std::move(edges));
    CHECK(max_matching_bipartite(g).matching.size() == brute_max_matching(g));
  }
}

TEST_CASE("the Koenig cover is checked internally and exposed") {
  Graph g = gen_regular_bipartite(40, 5, 77);
  BipartiteMatchingResult res = max_matching_bipartite(g);
  CHECK(static_cast<std::int64_t>(res.vertex_cover.size()) == res.matching.size());
  std::set<NodeId> cover(res.vertex_cover.begin(), res.vertex_cover.end());
  for (const Edge& e : g.edges()) {
    CHECK((cover.count(e.u) || cover.count(e.v)));
  }
}

TEST_CASE("exact small oracle") {
  CHECK(max_matching_exact_small(cycle_graph(5)) == 2);
  CHECK(max_matching_exact_small(petersen()) == 5);
  CHECK(brute_max_matching(petersen()) == 5);
  // K_4
  Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(max_matching_exact_small(k4) == 2);
  Graph too_big = gen_regular_general(66, 2, 3);
  CHECK_THROWS_AS(max_matching_exact_small(too_big), std::invalid_argument);
}

TEST_CASE("exact small agrees with the bipartite oracle on all tiny bipartite graphs") {
  // Exhaustive over (3,3) bipartitioned edge masks.
  for (int mask = 0; mask < (1 << 9); ++mask) {
    std::vector<Edge> edges;
    for (int l = 0; l < 3; ++l) {
      for (int r = 0; r < 3; ++r) {
        if (mask & (1 << (3 * l + r))) edges.push_back({l, static_cast<NodeId>(3 + r)});
      }
    }
    Graph g(6, std::move(edges), {Side::L, Side::L, Side::L, Side::R, Side::R, Side::R});
    CHECK(max_matching_bipartite(g).matching.size() == max_matching_exact_small(g));
  }
}

TEST_CASE("folklore bound formula") {
  Rational zero(0);
  CHECK(folklore_bound(100, zero, zero, zero, Rational(1)) == Rational(25));
  CHECK(folklore_bound(2000, zero, zero, zero, Rational(16)) == Rational(16000, 17));
  // All-slack case clamps at zero.
  CHECK(folklore_bound(10, Rational(2, 5), Rational(2, 5), Rational(2, 5), Rational(1)) ==
        Rational(0));
  CHECK_THROWS_AS(folklore_bound(10, Rational(1, 2), zero, zero, Rational(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(folklore_bound(10, zero, zero, zero, Rational(1, 2)),
                  std::invalid_argument);
}

TEST_CASE("generated regular graphs meet the folklore bound") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = gen_regular_bipartite(30, 4, seed);
    std::int64_t opt = max_matching_bipartite(g).matching.size();
    Rational bound = folklore_bound(g.node_count(), Rational(0), Rational(0), Rational(0),
                                    Rational(4));
    CHECK(Rational(opt) >= bound);
  }
}

TEST_CASE("approx_ratio") {
  Matching m = Matching::empty(4);
  m.add(0, 1, 0);
  CHECK(approx_ratio(m, 1) == Rational(1));
  m.add(2, 3, 0);
  CHECK(approx_ratio(m, 2) == Rational(1));
  Matching m8 = Matching::empty(20);
  for (NodeId v = 0; v < 16; v += 2) m8.add(v, v + 1, 0);
  CHECK(approx_ratio(m8, 10) == Rational(5, 4));
  Matching empty = Matching::empty(2);
  CHECK(approx_ratio(empty, 0) == Rational(1));
  CHECK_THROWS_AS(approx_ratio(empty, 1), std::domain_error);
}

TEST_CASE("C_6 under one-round Luby scores in {1, 3/2, 3}") {
  Graph c6 = cycle_graph(6);
  const std::int64_t opt = max_matching_bipartite(c6).matching.size();
  REQUIRE(opt == 3);
  std::set<std::string> seen;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Matching m = luby_round_distributed(c6, 2, s);
    Rational ratio = approx_ratio(m, opt);
    bool allowed = ratio == Rational(1) || ratio == Rational(3, 2) || ratio == Rational(3);
    CHECK(allowed);
    seen.insert(ratio.str());
  }
  CHECK(seen.size() >= 2);  // at least two of the outcomes actually occur
}

TEST_CASE("matching polytope spot check: uniform point on generated graphs") {
  // x_e = 1/(D+1) satisfies degree constraints everywhere and the odd-set
  // constraints, checked exhaustively for |S| <= 9 on a small instance.
  Graph g = gen_regular_general(10, 3, 13);
  const double xe = 1.0 / (3.0 + 1.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    CHECK(g.degree(v) * xe <= 1.0 + 1e-12);
  }
  for (int mask = 0; mask < (1 << 10); ++mask) {
    int size = __builtin_popcount(mask);
    if (size % 2 == 0 || size < 3 || size > 9) continue;
    int internal = 0;
    for (const Edge& e : g.edges()) {
      if ((mask & (1 << e.u)) && (mask & (1 << e.v))) ++internal;
    }
    CHECK(internal * xe <= (size - 1) / 2.0 + 1e-12);
  }
}
