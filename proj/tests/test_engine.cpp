#include <sstream>

#include "beepcast/engine.hpp"
#include "beepcast/error.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace beepcast;

namespace {

// Plays a fixed list of actions, then halts. Label is the position in the script.
class Scripted final : public NodeProgram {
 public:
  explicit Scripted(std::vector<Action> script) : script_(std::move(script)) {}
  std::unique_ptr<NodeProgram> clone() const override { return std::make_unique<Scripted>(*this); }
  void start(const StartInfo& info) override {
    pos_ = 0;
    level_ = info.level;
  }
  Action act() override { return script_[pos_]; }
  void observe(const Feedback&) override { ++pos_; }
  bool halted() const override { return pos_ >= script_.size(); }
  std::string state_label() const override {
    return "pos=" + std::to_string(pos_) + (level_ ? " level=" + std::to_string(*level_) : "");
  }

 private:
  std::vector<Action> script_;
  std::size_t pos_ = 0;
  std::optional<unsigned> level_;
};

// Never halts.
class Idler final : public NodeProgram {
 public:
  std::unique_ptr<NodeProgram> clone() const override { return std::make_unique<Idler>(); }
  void start(const StartInfo&) override {}
  Action act() override { return Action::idle(); }
  void observe(const Feedback&) override {}
  bool halted() const override { return false; }
  std::string state_label() const override { return "idle"; }
};

SimulationOptions limit(unsigned rounds) {
  SimulationOptions o;
  o.max_rounds = rounds;
  return o;
}

const Action kBeep = Action::beep();
const Action kListen = Action::listen();
const Action kIdle = Action::idle();

}  // namespace

TEST_CASE("beeping model: a listener hears a beep iff some neighbour beeps") {
  // Star with 2 leaves: source beeps (wakes both), then listens while both leaves beep.
  const Graph g = make_star(3);
  const Scripted source({kBeep, kListen, kListen});
  const Scripted leaf({kBeep, kIdle});
  const Trace t = simulate(g, ChannelModel::beeping, source, leaf, limit(10));
  REQUIRE(t.status == TraceStatus::complete);
  CHECK(t.nodes[1].wake_round == 1u);
  CHECK(t.nodes[2].wake_round == 1u);
  CHECK(t.at(2, 0).feedback.kind == FeedbackKind::beep);
  CHECK(t.at(3, 0).feedback.kind == FeedbackKind::nothing);
  CHECK(t.at(1, 0).feedback.kind == FeedbackKind::nothing);  // transmitting yields nothing
}

TEST_CASE("radio models distinguish one sender from a collision") {
  const Scripted source({Action::send(BitString::parse("1")), kListen});
  const Scripted leaf({Action::send(BitString::parse("01"))});

  SUBCASE("collision detection") {
    const Trace two = simulate(make_star(3), ChannelModel::radio_cd, source, leaf, limit(10));
    CHECK(two.at(2, 0).feedback.kind == FeedbackKind::collision);
    const Trace one = simulate(make_star(2), ChannelModel::radio_cd, source, leaf, limit(10));
    CHECK(one.at(2, 0).feedback.kind == FeedbackKind::message);
    CHECK(one.at(2, 0).feedback.payload == BitString::parse("01"));
  }
  SUBCASE("no collision detection") {
    const Trace two = simulate(make_star(3), ChannelModel::radio_no_cd, source, leaf, limit(10));
    CHECK(two.at(2, 0).feedback.kind == FeedbackKind::nothing);
    CHECK(two.nodes[1].wake_round == 1u);
    const Trace one = simulate(make_star(2), ChannelModel::radio_no_cd, source, leaf, limit(10));
    CHECK(one.at(2, 0).feedback.kind == FeedbackKind::message);
  }
}

TEST_CASE("beeping model rejects payloads") {
  const Scripted source({Action::send(BitString::parse("1"))});
  CHECK_THROWS_AS(simulate(make_single(), ChannelModel::beeping, source, source, limit(5)), Error);
}

TEST_CASE("wake-up: a woken node starts the round after") {
  const Graph g = make_path(2);
  const Scripted source({kBeep});
  const Scripted relay({kBeep});
  const Trace t = simulate(g, ChannelModel::beeping, source, relay, limit(10));
  REQUIRE(t.status == TraceStatus::complete);
  CHECK(t.nodes[0].wake_round == 0u);
  CHECK(t.nodes[1].wake_round == 1u);
  CHECK(t.nodes[2].wake_round == 2u);
  CHECK(t.at(1, 1).status == NodeStatus::asleep);
  CHECK(t.at(2, 1).status == NodeStatus::active);
  CHECK(t.at(2, 1).action == kBeep);
  CHECK(t.at(3, 2).status == NodeStatus::active);
  CHECK(t.nodes[0].termination_round == 1u);
  CHECK(t.nodes[2].termination_round == 3u);
  CHECK(t.nodes[2].prewake_listens == 2);
  CHECK(t.at(2, 0).status == NodeStatus::halted);
  CHECK(completion_round(t) == 3);
  CHECK(completion_round_nonsource(t) == 3);
}

TEST_CASE("round limit leaves a partial trace with an error marker") {
  const Trace t = simulate(make_path(1), ChannelModel::beeping, Idler(), Idler(), limit(7));
  CHECK(t.status == TraceStatus::round_limit_exceeded);
  CHECK(t.round_count() == 7);
  CHECK_FALSE(t.nodes[1].wake_round.has_value());
  CHECK_THROWS_AS(completion_round(t), Error);
  CHECK_THROWS_AS(simulate(make_single(), ChannelModel::beeping, Idler(), Idler(), limit(0)), Error);
}

TEST_CASE("a node that is never reached keeps the run open") {
  // The source halts after idling; nobody wakes the neighbour.
  const Scripted source({kIdle});
  const Trace t = simulate(make_path(1), ChannelModel::beeping, source, source, limit(4));
  CHECK(t.status == TraceStatus::round_limit_exceeded);
  CHECK(t.nodes[1].prewake_listens == 4);
}

TEST_CASE("energy counts post-wake listen and transmit rounds") {
  const Scripted source({kBeep, kListen, kIdle, kIdle});
  const Scripted leaf({kIdle, kIdle});
  const Trace t = simulate(make_path(1), ChannelModel::beeping, source, leaf, limit(10));
  const auto e = energy_of(t);
  CHECK(e.per_node == std::vector<unsigned>{2, 0});
  CHECK(e.with_prewake == std::vector<unsigned>{2, 1});
  CHECK(e.max == 2);
}

TEST_CASE("strengthened model exposes level only when asked") {
  const Scripted source({kBeep});
  const Scripted relay({kBeep});
  SimulationOptions plain = limit(10);
  const Trace t = simulate(make_path(2), ChannelModel::beeping, source, relay, plain);
  CHECK(t.at(1, 1).state_label == "pos=0");
  CHECK(t.at(2, 1).state_label == "pos=1");
  SimulationOptions strong = limit(10);
  strong.strengthened_model = true;
  const Trace s = simulate(make_path(2), ChannelModel::beeping, source, relay, strong);
  CHECK(s.at(1, 1).state_label == "pos=0 level=1");
  CHECK(s.at(2, 2).state_label == "pos=0 level=2");
}

TEST_CASE("trace file: header, one record per round and node, footers") {
  const Scripted source({kBeep, kListen});
  const Scripted relay({kBeep});
  const Trace t = simulate(make_path(1), ChannelModel::beeping, source, relay, limit(10));
  std::ostringstream os;
  write_trace(os, t);

  std::istringstream lines(os.str());
  std::vector<nlohmann::json> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(nlohmann::json::parse(line));
  REQUIRE(rows.size() == 1 + 2 * 2 + 2);
  CHECK(rows[0]["format"] == "beepcast-trace");
  CHECK(rows[0]["status"] == "complete");
  CHECK(rows[1]["round"] == 1);
  CHECK(rows[1]["node"] == 0);
  CHECK(rows[1]["action"] == "transmit");
  CHECK(rows[2]["action"] == "asleep");
  CHECK(rows[3]["action"] == "listen");
  CHECK(rows[3]["feedback"] == "beep");
  CHECK(rows[4]["action"] == "transmit");
  CHECK(rows[5]["footer"] == "node");
  CHECK(rows[6]["wake"] == 1);
  CHECK(rows[6]["terminate"] == 2);

  // Field order is fixed so files diff cleanly.
  CHECK(os.str().find("{\"round\":1,\"node\":0,\"action\":\"transmit\",\"feedback\":\"nothing\",\"state_label\":") !=
        std::string::npos);

  std::ostringstream again;
  write_trace(again, simulate(make_path(1), ChannelModel::beeping, source, relay, limit(10)));
  CHECK(again.str() == os.str());
}

TEST_CASE("default round limit") {
  CHECK(default_max_rounds(0, 2) == 36);
  CHECK(default_max_rounds(10, 64) == 10 + 24 + 32);
  CHECK(default_max_rounds(3, 33) == 3 + 24 + 32);
}

TEST_CASE("channel model names") {
  CHECK(parse_channel_model("beeping") == ChannelModel::beeping);
  CHECK(parse_channel_model("radio-cd") == ChannelModel::radio_cd);
  CHECK(parse_channel_model("radio-no-cd") == ChannelModel::radio_no_cd);
  CHECK(to_string(ChannelModel::radio_no_cd) == "radio-no-cd");
  CHECK_THROWS_AS(parse_channel_model("wifi"), Error);
}
