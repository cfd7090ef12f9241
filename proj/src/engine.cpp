#include "beepcast/engine.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

#include "beepcast/error.hpp"
#include "json.hpp"

namespace beepcast {

std::string_view to_string(ChannelModel model) {
  switch (model) {
    case ChannelModel::beeping: return "beeping";
    case ChannelModel::radio_cd: return "radio-cd";
    case ChannelModel::radio_no_cd: return "radio-no-cd";
  }
  return "unknown";
}

ChannelModel parse_channel_model(std::string_view name) {
  if (name == "beeping") return ChannelModel::beeping;
  if (name == "radio-cd" || name == "radio_cd") return ChannelModel::radio_cd;
  if (name == "radio-no-cd" || name == "radio_no_cd") return ChannelModel::radio_no_cd;
  throw Error(ErrorCode::invalid_argument, "unknown channel model '" + std::string(name) + "'");
}

std::string_view to_string(TraceStatus status) {
  switch (status) {
    case TraceStatus::complete: return "complete";
    case TraceStatus::round_limit_exceeded: return "round-limit-exceeded";
    case TraceStatus::protocol_error: return "protocol-error";
  }
  return "unknown";
}

namespace {

Feedback resolve(ChannelModel model, const Graph& g, NodeId listener,
                 const std::vector<const Action*>& transmitted) {
  std::size_t senders = 0;
  const Action* only = nullptr;
  for (NodeId u : g.neighbors(listener)) {
    if (transmitted[u] != nullptr) {
      ++senders;
      only = transmitted[u];
    }
  }
  if (senders == 0) return {};
  switch (model) {
    case ChannelModel::beeping:
      return {FeedbackKind::beep, {}};
    case ChannelModel::radio_cd:
      if (senders >= 2) return {FeedbackKind::collision, {}};
      return {FeedbackKind::message, only->payload.value_or(BitString{})};
    case ChannelModel::radio_no_cd:
      if (senders >= 2) return {};
      return {FeedbackKind::message, only->payload.value_or(BitString{})};
  }
  return {};
}

}  // namespace

Trace simulate(const Graph& g, ChannelModel model, const NodeProgram& source_program,
               const NodeProgram& nonsource_program, const SimulationOptions& options) {
  if (options.max_rounds < 1) throw Error(ErrorCode::invalid_argument, "max_rounds must be >= 1");

  const std::size_t n = g.node_count();
  const LevelMap levels = compute_levels(g);

  Trace trace;
  trace.model = model;
  trace.source = g.source();
  trace.nodes.resize(n);

  std::vector<std::unique_ptr<NodeProgram>> programs(n);
  std::vector<NodeStatus> status(n, NodeStatus::asleep);

  auto start_node = [&](NodeId v, unsigned round) {
    programs[v] = v == g.source() ? source_program.clone() : nonsource_program.clone();
    StartInfo info;
    info.is_source = v == g.source();
    if (options.strengthened_model) {
      info.level = levels.level[v];
      info.is_last_level = levels.level[v] == levels.eccentricity;
    }
    programs[v]->start(info);
    status[v] = NodeStatus::active;
    auto& summary = trace.nodes[v];
    summary.wake_round = round;
    for (std::size_t k = summary.learn_rounds.size(); k < programs[v]->learned_bits(); ++k) {
      summary.learn_rounds.push_back(round);
    }
  };

  auto finish_node = [&](NodeId v, unsigned round) {
    status[v] = NodeStatus::halted;
    auto& summary = trace.nodes[v];
    summary.termination_round = round;
    summary.decoded = programs[v]->decoded();
    summary.failure = programs[v]->failure();
    if (summary.failure && trace.status == TraceStatus::complete) {
      trace.status = TraceStatus::protocol_error;
      trace.error = "node " + std::to_string(v) + ": " + *summary.failure;
    }
  };

  start_node(g.source(), 0);

  std::vector<Action> actions(n);
  std::vector<const Action*> transmitted(n, nullptr);
  for (unsigned round = 1;; ++round) {
    if (std::all_of(status.begin(), status.end(), [](NodeStatus s) { return s == NodeStatus::halted; })) {
      break;
    }
    if (round > options.max_rounds) {
      trace.status = TraceStatus::round_limit_exceeded;
      trace.error = "not all nodes terminated within " + std::to_string(options.max_rounds) + " rounds";
      break;
    }

    std::fill(transmitted.begin(), transmitted.end(), nullptr);
    for (NodeId v = 0; v < n; ++v) {
      if (status[v] != NodeStatus::active) continue;
      actions[v] = programs[v]->act();
      if (actions[v].kind == ActionKind::transmit) {
        if (model == ChannelModel::beeping && actions[v].payload) {
          throw Error(ErrorCode::payload_in_beeping_model,
                      "a beep carries no payload (round " + std::to_string(round) + ")");
        }
        transmitted[v] = &actions[v];
      }
    }

    auto& records = trace.rounds.emplace_back(n);
    std::vector<NodeId> woken;
    for (NodeId v = 0; v < n; ++v) {
      auto& rec = records[v];
      rec.status = status[v];
      if (status[v] == NodeStatus::asleep) {
        ++trace.nodes[v].prewake_listens;
        if (std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                        [&](NodeId u) { return transmitted[u] != nullptr; })) {
          woken.push_back(v);
        }
        // Pre-wake listening records nothing.
        rec.state_label = "asleep";
        continue;
      }
      if (status[v] == NodeStatus::halted) {
        rec.state_label = "halted";
        continue;
      }
      rec.action = actions[v];
      if (actions[v].kind == ActionKind::listen) rec.feedback = resolve(model, g, v, transmitted);
      auto& program = *programs[v];
      program.observe(rec.feedback);
      rec.state_label = program.state_label();
      auto& summary = trace.nodes[v];
      for (std::size_t k = summary.learn_rounds.size(); k < program.learned_bits(); ++k) {
        summary.learn_rounds.push_back(round);
      }
      if (program.halted()) finish_node(v, round);
    }
    for (NodeId v : woken) {
      start_node(v, round);
      records[v].state_label = programs[v]->state_label();
    }
  }

  for (NodeId v = 0; v < n; ++v) {
    if (status[v] == NodeStatus::active) trace.nodes[v].decoded = programs[v]->decoded();
  }
  return trace;
}

unsigned default_max_rounds(unsigned eccentricity, std::uint64_t m) {
  const unsigned log_m = m <= 1 ? 0 : static_cast<unsigned>(std::bit_width(m - 1));  // ceil(log2 m)
  return eccentricity + 4 * log_m + 32;
}

EnergyReport energy_of(const Trace& trace) {
  EnergyReport out;
  const std::size_t n = trace.nodes.size();
  out.per_node.assign(n, 0);
  for (const auto& records : trace.rounds) {
    for (NodeId v = 0; v < n; ++v) {
      const auto& rec = records[v];
      if (rec.status == NodeStatus::active && rec.action.kind != ActionKind::idle) ++out.per_node[v];
    }
  }
  out.with_prewake.resize(n);
  for (NodeId v = 0; v < n; ++v) out.with_prewake[v] = out.per_node[v] + trace.nodes[v].prewake_listens;
  out.max = n == 0 ? 0 : *std::max_element(out.per_node.begin(), out.per_node.end());
  return out;
}

namespace {

unsigned completion_over(const Trace& trace, bool include_source) {
  unsigned latest = 0;
  for (NodeId v = 0; v < trace.nodes.size(); ++v) {
    if (!include_source && v == trace.source) continue;
    const auto& t = trace.nodes[v].termination_round;
    if (!t) throw Error(ErrorCode::incomplete_trace, "node " + std::to_string(v) + " never terminated");
    latest = std::max(latest, *t);
  }
  return latest;
}

const char* action_name(const RoundRecord& rec) {
  switch (rec.status) {
    case NodeStatus::asleep: return "asleep";
    case NodeStatus::halted: return "halted";
    case NodeStatus::active: break;
  }
  switch (rec.action.kind) {
    case ActionKind::idle: return "idle";
    case ActionKind::listen: return "listen";
    case ActionKind::transmit: return "transmit";
  }
  return "unknown";
}

const char* feedback_name(FeedbackKind kind) {
  switch (kind) {
    case FeedbackKind::nothing: return "nothing";
    case FeedbackKind::beep: return "beep";
    case FeedbackKind::collision: return "collision";
    case FeedbackKind::message: return "message";
  }
  return "unknown";
}

}  // namespace

unsigned completion_round(const Trace& trace) { return completion_over(trace, true); }
unsigned completion_round_nonsource(const Trace& trace) { return completion_over(trace, false); }

void write_trace(std::ostream& os, const Trace& trace) {
  using nlohmann::ordered_json;
  ordered_json header;
  header["format"] = "beepcast-trace";
  header["version"] = 1;
  header["model"] = to_string(trace.model);
  header["nodes"] = trace.nodes.size();
  header["source"] = trace.source;
  header["rounds"] = trace.round_count();
  header["status"] = to_string(trace.status);
  if (!trace.error.empty()) header["error"] = trace.error;
  os << header.dump() << '\n';

  for (unsigned t = 1; t <= trace.round_count(); ++t) {
    for (NodeId v = 0; v < trace.nodes.size(); ++v) {
      const auto& rec = trace.at(t, v);
      ordered_json row;
      row["round"] = t;
      row["node"] = v;
      row["action"] = action_name(rec);
      if (rec.status == NodeStatus::active && rec.action.payload) row["payload"] = rec.action.payload->str();
      row["feedback"] = feedback_name(rec.feedback.kind);
      if (rec.feedback.kind == FeedbackKind::message) row["message"] = rec.feedback.payload.str();
      row["state_label"] = rec.state_label;
      os << row.dump() << '\n';
    }
  }

  for (NodeId v = 0; v < trace.nodes.size(); ++v) {
    const auto& s = trace.nodes[v];
    ordered_json footer;
    footer["footer"] = "node";
    footer["node"] = v;
    footer["wake"] = s.wake_round ? ordered_json(*s.wake_round) : ordered_json(nullptr);
    footer["terminate"] = s.termination_round ? ordered_json(*s.termination_round) : ordered_json(nullptr);
    footer["learn_rounds"] = s.learn_rounds;
    footer["decoded"] = s.decoded ? ordered_json(*s.decoded) : ordered_json(nullptr);
    footer["prewake_listens"] = s.prewake_listens;
    if (s.failure) footer["failure"] = *s.failure;
    os << footer.dump() << '\n';
  }
}

}  // namespace beepcast
