#include "beepcast/error.hpp"

namespace beepcast {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::index_too_large: return "index-too-large";
    case ErrorCode::invalid_index: return "invalid-index";
    case ErrorCode::invalid_m: return "invalid-m";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::not_a_prefix: return "not-a-prefix";
    case ErrorCode::malformed_stream: return "malformed-stream";
    case ErrorCode::invalid_graph: return "invalid-graph";
    case ErrorCode::invalid_D: return "invalid-D";
    case ErrorCode::payload_in_beeping_model: return "payload-in-beeping-model";
    case ErrorCode::incomplete_trace: return "incomplete-trace";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace beepcast
