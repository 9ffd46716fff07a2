#include "regmatch/sim.hpp"

#include <algorithm>
#include <stdexcept>

namespace regmatch {

Message encode_uint(u128 value) {
  Message out;
  if (value == 0) {
    out.push_back(0);
    return out;
  }
  while (value > 0) {
    out.push_back(static_cast<std::uint8_t>(value & 0xff));
    value >>= 8;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

u128 decode_uint(const Message& msg) {
  u128 value = 0;
  for (std::uint8_t b : msg) value = (value << 8) | b;
  return value;
}

int message_bits(const Message& msg) {
  if (msg.empty()) return 0;
  int top = 1;
  for (int b = 7; b >= 1; --b) {
    if (msg.front() & (1u << b)) {
      top = b + 1;
      break;
    }
  }
  return static_cast<int>(8 * (msg.size() - 1)) + top;
}

bool Trace::all_finished() const {
  for (std::int32_t f : finish_round) {
    if (f < 0) return false;
  }
  return true;
}

Trace run_rounds(const Graph& g, const NodeProgram& program, std::int32_t budget,
                 std::uint64_t seed) {
  if (budget <= 0) throw std::invalid_argument("budget must be positive");
  const NodeId n = g.node_count();

  // port_back[v][p] = the port index of v at its p-th neighbor.
  std::vector<std::vector<NodeId>> port_back(n);
  for (NodeId v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    port_back[v].resize(nb.size());
    for (std::size_t p = 0; p < nb.size(); ++p) {
      auto wn = g.neighbors(nb[p]);
      port_back[v][p] =
          static_cast<NodeId>(std::lower_bound(wn.begin(), wn.end(), v) - wn.begin());
    }
  }

  std::vector<std::unique_ptr<NodeProcess>> procs(n);
  for (NodeId v = 0; v < n; ++v) {
    procs[v] = program.init(v, g.degree(v), Rng::derive(seed, stream::kNodeLocal, v));
  }

  Trace trace;
  trace.finish_round.assign(n, -1);
  trace.outputs.assign(n, 0);

  std::vector<std::vector<Message>> inbox(n), next_inbox(n);
  for (NodeId v = 0; v < n; ++v) {
    inbox[v].resize(g.degree(v));
    next_inbox[v].resize(g.degree(v));
  }

  NodeId finished = 0;
  for (std::int32_t round = 0; round < budget && finished < n; ++round) {
    for (NodeId v = 0; v < n; ++v) {
      for (Message& msg : next_inbox[v]) msg.clear();
    }
    for (NodeId v = 0; v < n; ++v) {
      if (trace.finish_round[v] >= 0) continue;
      StepResult step = procs[v]->on_round(inbox[v]);
      if (step.output) {
        trace.finish_round[v] = round;
        trace.outputs[v] = *step.output;
        ++finished;
      }
      auto nb = g.neighbors(v);
      std::size_t ports = std::min(step.outbox.size(), nb.size());
      for (std::size_t p = 0; p < ports; ++p) {
        if (step.outbox[p].empty()) continue;
        ++trace.total_messages;
        trace.max_message_bits = std::max(trace.max_message_bits, message_bits(step.outbox[p]));
        next_inbox[nb[p]][port_back[v][p]] = std::move(step.outbox[p]);
      }
    }
    inbox.swap(next_inbox);
    trace.rounds_executed = round + 1;
  }
  trace.budget_exhausted = finished < n;
  return trace;
}

Rational node_averaged_time(const Trace& t) {
  if (!t.all_finished()) throw std::invalid_argument("trace has unfinished nodes");
  if (t.finish_round.empty()) return Rational(0);
  std::int64_t sum = 0;
  for (std::int32_t f : t.finish_round) sum += f;
  return Rational(sum, static_cast<std::int64_t>(t.finish_round.size()));
}

}  // namespace regmatch
