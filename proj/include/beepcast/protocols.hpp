#pragma once

#include <cstdint>
#include <memory>
#include <string_view>

#include "beepcast/bitstring.hpp"
#include "beepcast/codec.hpp"
#include "beepcast/engine.hpp"

namespace beepcast {

// Source side of the round-optimal broadcast: beep, probe for neighbours,
// then pipeline s with one round per 0-bit and three rounds per 1-bit.
// With `acknowledged`, the source waits in 3-round phases for level 1 to go
// quiet instead of terminating after the last bit.
std::unique_ptr<NodeProgram> optimal_source(BitString s, bool acknowledged = false);

struct RelayOptions {
  bool acknowledged = false;
  // Test hook: drop the idle round that follows each relayed 1-bit.
  bool skip_idle_after_relay = false;
};

// Non-source side: accumulates bits until the word is in the codebook, relaying
// each 1-bit to the next level.
std::unique_ptr<NodeProgram> optimal_nonsource(std::shared_ptr<const MessageSpace> space,
                                               RelayOptions options = {});

inline std::unique_ptr<NodeProgram> acked_optimal_source(BitString s) {
  return optimal_source(std::move(s), true);
}
inline std::unique_ptr<NodeProgram> acked_optimal_nonsource(std::shared_ptr<const MessageSpace> space) {
  return optimal_nonsource(std::move(space), RelayOptions{.acknowledged = true});
}

// Beep Waves baseline carrying the self-delimiting encoding of mu.
std::unique_ptr<NodeProgram> beepwaves_source(std::uint64_t mu);
std::unique_ptr<NodeProgram> beepwaves_nonsource();

enum class ProtocolName { optimal, beepwaves, acked_optimal };

std::string_view to_string(ProtocolName name);
ProtocolName parse_protocol_name(std::string_view name);  // optimal | beepwaves | acked-optimal

struct ProtocolPair {
  std::unique_ptr<NodeProgram> source;
  std::unique_ptr<NodeProgram> nonsource;
};

ProtocolPair make_protocol(ProtocolName name, std::shared_ptr<const MessageSpace> space,
                           std::uint64_t mu, RelayOptions options = {});

}  // namespace beepcast
