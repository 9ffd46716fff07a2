#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regmatch/matching.hpp"
#include "regmatch/rational.hpp"

namespace regmatch {

enum class GadgetFamily { Cycle, EvenDegree, GeneralDegree };

struct LowerBoundParams {
  std::int32_t delta = 2;
  std::int32_t r = 0;    // path gadget radius (families 1-2)
  std::int32_t rho = 0;  // edge subgadget length (family 3)
  std::int32_t k = 0;    // gadget / layer count
  std::int32_t x = 0;    // blue induced degree (family 3)
  std::int32_t y = 0;    // red induced degree (family 3)
};

// A built hard instance: the graph, how each gadget was inserted, and the
// node regions whose unmatched nodes witness a per-pair failure.
//
// Orientation encoding: families 1-2 store 0 (forwards) or 1 (backwards)
// per path gadget. Family 3 stores, per even-layer base node, the value
// blue_perm * 2 + red_perm with blue_perm indexing the lexicographic
// permutations of its three blue subgadgets and red_perm those of the two
// red ones.
struct LowerBoundInstance {
  Graph graph;
  GadgetFamily family = GadgetFamily::Cycle;
  LowerBoundParams params;
  std::vector<std::int32_t> orientations;
  std::vector<NodeId> innermost_nodes;  // one representative per gadget
  std::vector<NodeId> anchor_nodes;
  std::vector<std::vector<NodeId>> failure_regions;  // per gadget pair / group
};

// Delta = 3x + 2y with x,y >= 0: (0, delta/2) for even delta,
// (1, (delta-3)/2) for odd. Requires delta >= 2.
std::pair<std::int32_t, std::int32_t> decompose_degree(std::int32_t delta);

// Even cycle of k*(2r+2) nodes: k path gadgets of 2r+1 nodes joined through
// k anchors, each gadget inserted forwards or backwards by a fair coin.
// Passing `forced` pins the insertion records instead (used to rebuild an
// exported instance and by the symmetry tests).
LowerBoundInstance build_cycle_instance(std::int32_t r, std::int32_t k, std::uint64_t seed,
                                        const std::vector<std::int32_t>* forced = nullptr);

// The cycle construction with every node expanded into a (2*delta+1)-node
// subgadget; delta even. n = k*(2r+2)*(2*delta+1).
LowerBoundInstance build_even_degree_instance(std::int32_t delta, std::int32_t r,
                                              std::int32_t k, std::uint64_t seed,
                                              const std::vector<std::int32_t>* forced = nullptr);

// Layered degree-5 base graph on 4k nodes (k a multiple of 4) whose blue
// edges carry z=x and red edges z=y parallel-edge subgadgets of length
// 2*rho+1 (rho even). n = 4k + 10k*delta*rho.
LowerBoundInstance build_general_degree_instance(std::int32_t delta, std::int32_t rho,
                                                 std::int32_t k, std::uint64_t seed,
                                                 const std::vector<std::int32_t>* forced = nullptr);

enum class AdversaryAlgo { LubyMulti, Fast, Warmup };

struct AdversaryOptions {
  double fast_eps = 0.05;
  Rational warmup_eps = Rational(1, 10);
  // Drives the warmup stages directly (otherwise they run at eps/8).
  std::optional<Rational> warmup_internal_eps;
  int c_prime = 2;
};

struct AdversaryTrialRecord {
  std::int64_t unmatched = 0;
  double pair_failure_fraction = 0.0;
  double ratio = 0.0;  // (n/2) / |M|
};

struct AdversaryReport {
  std::vector<AdversaryTrialRecord> trials;
  double mean_unmatched = 0.0;
  double mean_pair_failure = 0.0;
  double mean_ratio = 0.0;
  std::int64_t opt = 0;  // n/2 for every family
};

// Re-randomizes the gadget orientations per trial, runs the named algorithm
// truncated at round_budget, and scores unmatched nodes, per-region failure
// frequency and the ratio against the perfect matching.
AdversaryReport adversary_trial(const LowerBoundInstance& inst, AdversaryAlgo algo,
                                std::int32_t round_budget, std::int32_t trials,
                                std::uint64_t seed, const AdversaryOptions& options = {});

// Edge-list file plus a JSON sidecar with family, params, orientations and
// the recorded node lists.
void export_instance(const LowerBoundInstance& inst, const std::string& graph_path,
                     const std::string& meta_path);

}  // namespace regmatch
