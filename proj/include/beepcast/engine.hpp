#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beepcast/bitstring.hpp"
#include "beepcast/graph.hpp"

namespace beepcast {

enum class ChannelModel { beeping, radio_cd, radio_no_cd };

std::string_view to_string(ChannelModel model);
ChannelModel parse_channel_model(std::string_view name);  // beeping | radio-cd | radio-no-cd

enum class ActionKind { idle, listen, transmit };

struct Action {
  ActionKind kind = ActionKind::idle;
  std::optional<BitString> payload;  // transmit only; must be empty in the beeping model

  static Action idle() { return {ActionKind::idle, std::nullopt}; }
  static Action listen() { return {ActionKind::listen, std::nullopt}; }
  static Action beep() { return {ActionKind::transmit, std::nullopt}; }
  static Action send(BitString payload) { return {ActionKind::transmit, std::move(payload)}; }

  friend bool operator==(const Action&, const Action&) = default;
};

enum class FeedbackKind { nothing, beep, collision, message };

struct Feedback {
  FeedbackKind kind = FeedbackKind::nothing;
  BitString payload;  // message only

  // Anything other than silence counts as a signal for beep-driven protocols.
  bool is_signal() const noexcept { return kind != FeedbackKind::nothing; }
  friend bool operator==(const Feedback&, const Feedback&) = default;
};

// What a program learns when it starts. Level data is only filled in when the
// run opts into the strengthened model.
struct StartInfo {
  bool is_source = false;
  std::optional<unsigned> level;
  std::optional<bool> is_last_level;
};

// Per-node state machine driven by the engine. Each round the engine calls
// act(), resolves the channel, then calls observe() with the feedback (always
// Nothing unless the action was listen). A program that reports halted()
// after observe() terminated at the end of that round.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;

  virtual std::unique_ptr<NodeProgram> clone() const = 0;

  virtual void start(const StartInfo& info) = 0;
  virtual Action act() = 0;
  virtual void observe(const Feedback& feedback) = 0;
  virtual bool halted() const = 0;

  // Opaque label compared across nodes; must not depend on node identity.
  virtual std::string state_label() const = 0;

  // Number of message bits learned so far; the engine timestamps each increase.
  virtual std::size_t learned_bits() const { return 0; }
  virtual std::optional<std::uint64_t> decoded() const { return std::nullopt; }

  // Set when the program detected inconsistent feedback and halted.
  virtual std::optional<std::string> failure() const { return std::nullopt; }
};

enum class NodeStatus { asleep, active, halted };

struct RoundRecord {
  NodeStatus status = NodeStatus::asleep;
  Action action;  // meaningful when status == active
  Feedback feedback;
  std::string state_label;
};

struct NodeSummary {
  std::optional<unsigned> wake_round;  // 0 for the source
  std::optional<unsigned> termination_round;
  std::vector<unsigned> learn_rounds;  // round at which bit j (0-based) was learned
  std::optional<std::uint64_t> decoded;
  std::optional<std::string> failure;
  unsigned prewake_listens = 0;  // silent, unrecorded listening before wake-up
};

enum class TraceStatus { complete, round_limit_exceeded, protocol_error };

std::string_view to_string(TraceStatus status);

struct Trace {
  ChannelModel model = ChannelModel::beeping;
  std::vector<std::vector<RoundRecord>> rounds;  // rounds[t - 1][node]
  std::vector<NodeSummary> nodes;
  NodeId source = 0;
  TraceStatus status = TraceStatus::complete;
  std::string error;  // first failure or limit message

  unsigned round_count() const noexcept { return static_cast<unsigned>(rounds.size()); }
  const RoundRecord& at(unsigned round, NodeId v) const { return rounds.at(round - 1).at(v); }
};

struct SimulationOptions {
  unsigned max_rounds = 1000;
  bool strengthened_model = false;  // expose (level, is-last-level) to programs
};

// Lock-step synchronous execution. The source starts in round 1; any other node
// starts the round after the first round in which a neighbour transmits.
Trace simulate(const Graph& g, ChannelModel model, const NodeProgram& source_program,
               const NodeProgram& nonsource_program, const SimulationOptions& options);

// max_rounds default for a run: D + 4*ceil(log2 m) + 32.
unsigned default_max_rounds(unsigned eccentricity, std::uint64_t m);

struct EnergyReport {
  std::vector<unsigned> per_node;  // listen + transmit rounds after wake-up
  std::vector<unsigned> with_prewake;
  unsigned max = 0;
};

EnergyReport energy_of(const Trace& trace);

// Throw Error(incomplete_trace) if any node never terminated.
unsigned completion_round(const Trace& trace);
unsigned completion_round_nonsource(const Trace& trace);

// Line-delimited JSON: a header object, one object per (round, node), then one
// footer object per node with wake/termination rounds.
void write_trace(std::ostream& os, const Trace& trace);

}  // namespace beepcast
