#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace beepcast {

enum class ErrorCode {
  invalid_argument,
  index_too_large,
  invalid_index,
  invalid_m,
  out_of_range,
  not_a_prefix,
  malformed_stream,
  invalid_graph,
  invalid_D,
  payload_in_beeping_model,
  incomplete_trace,
  parse_error,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace beepcast
