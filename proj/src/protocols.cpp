#include "beepcast/protocols.hpp"

#include <string>

#include "beepcast/error.hpp"

namespace beepcast {

namespace {

class OptimalSource final : public NodeProgram {
 public:
  OptimalSource(BitString s, bool acknowledged) : s_(std::move(s)), acknowledged_(acknowledged) {
    if (s_.empty()) throw Error(ErrorCode::invalid_argument, "cannot broadcast the empty word");
  }

  std::unique_ptr<NodeProgram> clone() const override { return std::make_unique<OptimalSource>(*this); }

  void start(const StartInfo&) override { phase_ = Phase::initial_beep; }

  Action act() override {
    switch (phase_) {
      case Phase::initial_beep: return Action::beep();
      case Phase::probe_listen: return Action::listen();
      case Phase::loop: return s_[bit_] == 1 && sub_ == 0 ? Action::beep() : Action::idle();
      case Phase::final_bit: return s_.back() == 1 ? Action::beep() : Action::idle();
      case Phase::ack_listen: return Action::listen();
      // The source has no upstream level to keep informed during acknowledgement.
      case Phase::pre_loop_idle:
      case Phase::ack_quiet:
      case Phase::ack_idle:
      case Phase::done: return Action::idle();
    }
    return Action::idle();
  }

  void observe(const Feedback& feedback) override {
    switch (phase_) {
      case Phase::initial_beep:
        phase_ = Phase::probe_listen;
        break;
      case Phase::probe_listen:
        phase_ = feedback.is_signal() ? Phase::pre_loop_idle : Phase::done;
        break;
      case Phase::pre_loop_idle:
        enter_bit(0);
        break;
      case Phase::loop:
        if (s_[bit_] == 1 && ++sub_ < 3) break;
        enter_bit(bit_ + 1);
        break;
      case Phase::final_bit:
        phase_ = acknowledged_ ? Phase::ack_quiet : Phase::done;
        break;
      case Phase::ack_quiet:
        phase_ = Phase::ack_listen;
        break;
      case Phase::ack_listen:
        phase_ = feedback.is_signal() ? Phase::ack_idle : Phase::done;
        break;
      case Phase::ack_idle:
        phase_ = Phase::ack_quiet;
        break;
      case Phase::done:
        break;
    }
  }

  bool halted() const override { return phase_ == Phase::done; }

  std::string state_label() const override {
    std::string label = "src/";
    label += phase_name();
    if (phase_ == Phase::loop) label += " bit=" + std::to_string(bit_) + " sub=" + std::to_string(sub_);
    return label;
  }

 private:
  enum class Phase { initial_beep, probe_listen, pre_loop_idle, loop, final_bit, ack_quiet, ack_listen, ack_idle, done };

  void enter_bit(std::size_t i) {
    bit_ = i;
    sub_ = 0;
    if (bit_ + 1 < s_.size()) {
      phase_ = Phase::loop;
    } else if (acknowledged_ || s_.back() == 1) {
      phase_ = Phase::final_bit;
    } else {
      phase_ = Phase::done;
    }
  }

  const char* phase_name() const {
    switch (phase_) {
      case Phase::initial_beep: return "initial-beep";
      case Phase::probe_listen: return "probe-listen";
      case Phase::pre_loop_idle: return "pre-loop-idle";
      case Phase::loop: return "loop";
      case Phase::final_bit: return "final-bit";
      case Phase::ack_quiet: return "ack-quiet";
      case Phase::ack_listen: return "ack-listen";
      case Phase::ack_idle: return "ack-idle";
      case Phase::done: return "done";
    }
    return "?";
  }

  BitString s_;
  bool acknowledged_;
  Phase phase_ = Phase::initial_beep;
  std::size_t bit_ = 0;
  int sub_ = 0;
};

class OptimalNonSource final : public NodeProgram {
 public:
  OptimalNonSource(std::shared_ptr<const MessageSpace> space, RelayOptions options)
      : space_(std::move(space)), options_(options) {
    if (!space_) throw Error(ErrorCode::invalid_argument, "relay needs a message space");
  }

  std::unique_ptr<NodeProgram> clone() const override { return std::make_unique<OptimalNonSource>(*this); }

  void start(const StartInfo&) override {
    acc_ = {};
    phase_ = Phase::wake_beep;
  }

  Action act() override {
    switch (phase_) {
      case Phase::wake_beep:
      case Phase::relay_beep:
      case Phase::ack_beep: return Action::beep();
      case Phase::probe_listen:
      case Phase::loop_listen:
      case Phase::ack_listen: return Action::listen();
      case Phase::final_relay: return acc_.back() == 1 ? Action::beep() : Action::idle();
      case Phase::relay_idle:
      case Phase::ack_idle:
      case Phase::done: return Action::idle();
    }
    return Action::idle();
  }

  void observe(const Feedback& feedback) override {
    switch (phase_) {
      case Phase::wake_beep:
        phase_ = Phase::probe_listen;
        break;
      case Phase::probe_listen:
        terminal_ = !feedback.is_signal();
        phase_ = Phase::loop_listen;
        break;
      case Phase::loop_listen:
        learn(feedback.is_signal() ? 1 : 0);
        break;
      case Phase::relay_beep:
        phase_ = options_.skip_idle_after_relay ? Phase::loop_listen : Phase::relay_idle;
        break;
      case Phase::relay_idle:
        phase_ = Phase::loop_listen;
        break;
      case Phase::final_relay:
        phase_ = options_.acknowledged ? Phase::ack_beep : Phase::done;
        break;
      case Phase::ack_beep:
        phase_ = Phase::ack_listen;
        break;
      case Phase::ack_listen:
        phase_ = feedback.is_signal() ? Phase::ack_idle : Phase::done;
        break;
      case Phase::ack_idle:
        phase_ = Phase::ack_beep;
        break;
      case Phase::done:
        break;
    }
  }

  bool halted() const override { return phase_ == Phase::done; }

  std::string state_label() const override {
    std::string label = "relay/";
    label += phase_name();
    label += " acc=" + acc_.str();
    if (terminal_) label += *terminal_ ? " terminal" : " inner";
    return label;
  }

  std::size_t learned_bits() const override { return acc_.size(); }
  std::optional<std::uint64_t> decoded() const override { return decoded_; }
  std::optional<std::string> failure() const override { return failure_; }

 private:
  enum class Phase {
    wake_beep, probe_listen, loop_listen, relay_beep, relay_idle, final_relay,
    ack_beep, ack_listen, ack_idle, done
  };

  void learn(int bit) {
    acc_.push_back(bit);
    Decoded result;
    try {
      result = space_->decode(acc_);
    } catch (const Error& e) {
      failure_ = std::string("corrupted-feedback: ") + e.what();
      phase_ = Phase::done;
      return;
    }
    if (!result.complete) {
      phase_ = bit == 1 ? Phase::relay_beep : Phase::loop_listen;
      return;
    }
    decoded_ = result.value;
    if (*terminal_) {
      phase_ = Phase::done;
    } else if (options_.acknowledged || bit == 1) {
      phase_ = Phase::final_relay;
    } else {
      phase_ = Phase::done;
    }
  }

  const char* phase_name() const {
    switch (phase_) {
      case Phase::wake_beep: return "wake-beep";
      case Phase::probe_listen: return "probe-listen";
      case Phase::loop_listen: return "loop-listen";
      case Phase::relay_beep: return "relay-beep";
      case Phase::relay_idle: return "relay-idle";
      case Phase::final_relay: return "final-relay";
      case Phase::ack_beep: return "ack-beep";
      case Phase::ack_listen: return "ack-listen";
      case Phase::ack_idle: return "ack-idle";
      case Phase::done: return "done";
    }
    return "?";
  }

  std::shared_ptr<const MessageSpace> space_;
  RelayOptions options_;
  Phase phase_ = Phase::wake_beep;
  BitString acc_;
  std::optional<bool> terminal_;
  std::optional<std::uint64_t> decoded_;
  std::optional<std::string> failure_;
};

// One bit every third round, starting in round 1.
class BeepWavesSource final : public NodeProgram {
 public:
  explicit BeepWavesSource(std::uint64_t mu) : encoded_(self_delimiting_encode(mu)) {}

  std::unique_ptr<NodeProgram> clone() const override { return std::make_unique<BeepWavesSource>(*this); }

  void start(const StartInfo&) override {
    bit_ = 0;
    sub_ = 0;
    done_ = false;
  }

  Action act() override {
    return !done_ && sub_ == 0 && encoded_[bit_] == 1 ? Action::beep() : Action::idle();
  }

  void observe(const Feedback&) override {
    if (sub_ == 0 && bit_ + 1 == encoded_.size()) {
      done_ = true;
      return;
    }
    if (++sub_ == 3) {
      sub_ = 0;
      ++bit_;
    }
  }

  bool halted() const override { return done_; }

  std::string state_label() const override {
    if (done_) return "bw-src/done";
    return "bw-src/bit=" + std::to_string(bit_) + " sub=" + std::to_string(sub_);
  }

 private:
  BitString encoded_;
  std::size_t bit_ = 0;
  int sub_ = 0;
  bool done_ = false;
};

// Learns a bit, relays it the next round (beep iff 1), rests one round, listens.
// Being woken is itself the first bit, which is always 1.
class BeepWavesNonSource final : public NodeProgram {
 public:
  std::unique_ptr<NodeProgram> clone() const override { return std::make_unique<BeepWavesNonSource>(*this); }

  void start(const StartInfo&) override {
    stream_ = {};
    learn(1);
  }

  Action act() override {
    switch (phase_) {
      case Phase::relay: return stream_.back() == 1 ? Action::beep() : Action::idle();
      case Phase::listen: return Action::listen();
      case Phase::rest:
      case Phase::done: return Action::idle();
    }
    return Action::idle();
  }

  void observe(const Feedback& feedback) override {
    switch (phase_) {
      case Phase::relay:
        phase_ = decoded_ ? Phase::done : Phase::rest;
        break;
      case Phase::rest:
        phase_ = Phase::listen;
        break;
      case Phase::listen:
        learn(feedback.is_signal() ? 1 : 0);
        break;
      case Phase::done:
        break;
    }
  }

  bool halted() const override { return phase_ == Phase::done; }

  std::string state_label() const override {
    static constexpr const char* names[] = {"relay", "rest", "listen", "done"};
    return std::string("bw/") + names[static_cast<int>(phase_)] + " bits=" + stream_.str();
  }

  std::size_t learned_bits() const override { return stream_.size(); }
  std::optional<std::uint64_t> decoded() const override { return decoded_; }
  std::optional<std::string> failure() const override { return failure_; }

 private:
  enum class Phase { relay, rest, listen, done };

  void learn(int bit) {
    stream_.push_back(bit);
    phase_ = Phase::relay;
    try {
      if (auto result = self_delimiting_decode(stream_); result.complete) decoded_ = result.value;
    } catch (const Error& e) {
      failure_ = e.what();
      phase_ = Phase::done;
    }
  }

  BitString stream_;
  Phase phase_ = Phase::relay;
  std::optional<std::uint64_t> decoded_;
  std::optional<std::string> failure_;
};

}  // namespace

std::unique_ptr<NodeProgram> optimal_source(BitString s, bool acknowledged) {
  return std::make_unique<OptimalSource>(std::move(s), acknowledged);
}

std::unique_ptr<NodeProgram> optimal_nonsource(std::shared_ptr<const MessageSpace> space,
                                               RelayOptions options) {
  return std::make_unique<OptimalNonSource>(std::move(space), options);
}

std::unique_ptr<NodeProgram> beepwaves_source(std::uint64_t mu) {
  return std::make_unique<BeepWavesSource>(mu);
}

std::unique_ptr<NodeProgram> beepwaves_nonsource() { return std::make_unique<BeepWavesNonSource>(); }

std::string_view to_string(ProtocolName name) {
  switch (name) {
    case ProtocolName::optimal: return "optimal";
    case ProtocolName::beepwaves: return "beepwaves";
    case ProtocolName::acked_optimal: return "acked-optimal";
  }
  return "unknown";
}

ProtocolName parse_protocol_name(std::string_view name) {
  if (name == "optimal") return ProtocolName::optimal;
  if (name == "beepwaves") return ProtocolName::beepwaves;
  if (name == "acked-optimal") return ProtocolName::acked_optimal;
  throw Error(ErrorCode::invalid_argument, "unknown protocol '" + std::string(name) + "'");
}

ProtocolPair make_protocol(ProtocolName name, std::shared_ptr<const MessageSpace> space,
                           std::uint64_t mu, RelayOptions options) {
  const BitString& word = space->encode(mu);  // range check for every protocol
  switch (name) {
    case ProtocolName::optimal:
      options.acknowledged = false;
      return {optimal_source(word), optimal_nonsource(space, options)};
    case ProtocolName::acked_optimal:
      options.acknowledged = true;
      return {optimal_source(word, true), optimal_nonsource(space, options)};
    case ProtocolName::beepwaves:
      return {beepwaves_source(mu), beepwaves_nonsource()};
  }
  throw Error(ErrorCode::invalid_argument, "unknown protocol");
}

}  // namespace beepcast
