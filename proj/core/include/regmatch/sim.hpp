#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "regmatch/graph.hpp"
#include "regmatch/rational.hpp"
#include "regmatch/rng.hpp"

namespace regmatch {

// Messages are opaque byte strings; an empty vector means "no message".
using Message = std::vector<std::uint8_t>;

// Minimal big-endian integer encoding (the value 0 still occupies one byte;
// only a default-constructed Message counts as absent).
Message encode_uint(u128 value);
u128 decode_uint(const Message& msg);

// Bit length of the encoded payload: 8*(len-1) plus the width of the top
// byte. Zero for the empty message.
int message_bits(const Message& msg);

struct StepResult {
  // One message per port (may be shorter; missing ports send nothing).
  std::vector<Message> outbox;
  // Set once, when the node commits to its output.
  std::optional<std::int64_t> output;
};

// Per-node running state. on_round is called once per round; round 0 sees an
// empty inbox, round r>0 sees the messages sent in round r-1, port-ordered.
class NodeProcess {
 public:
  virtual ~NodeProcess() = default;
  virtual StepResult on_round(std::span<const Message> inbox) = 0;
};

class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual std::unique_ptr<NodeProcess> init(NodeId node, NodeId degree,
                                            std::uint64_t local_seed) const = 0;
};

struct Trace {
  std::int32_t rounds_executed = 0;
  std::vector<std::int32_t> finish_round;  // -1 when the node never finished
  std::vector<std::int64_t> outputs;       // valid where finish_round >= 0
  std::int32_t max_message_bits = 0;
  std::int64_t total_messages = 0;
  bool budget_exhausted = false;

  bool all_finished() const;
};

// Runs up to `budget` rounds or until every node has produced its output.
// Per-node seeds derive from (seed, node id); ports are neighbor-sorted by
// id; delivery is loss-free. Finished nodes stop being stepped and send
// nothing. Never throws on budget exhaustion; the Trace carries the flag.
Trace run_rounds(const Graph& g, const NodeProgram& program, std::int32_t budget,
                 std::uint64_t seed);

// (1/n) * sum of finish rounds. Throws std::invalid_argument on an
// unfinished trace.
Rational node_averaged_time(const Trace& t);

}  // namespace regmatch
