#include "beepcast/bitstring.hpp"

#include <algorithm>

#include "beepcast/error.hpp"

namespace beepcast {

BitString BitString::parse(std::string_view text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw Error(ErrorCode::parse_error, "not a binary word: '" + std::string(text) + "'");
    }
    out.bits_.push_back(ch);
  }
  return out;
}

BitString BitString::prefix(std::size_t length) const {
  BitString out;
  out.bits_ = bits_.substr(0, std::min(length, bits_.size()));
  return out;
}

bool BitString::is_prefix_of(const BitString& other) const noexcept {
  return bits_.size() <= other.bits_.size() &&
         std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::size_t BitString::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), '1'));
}

BitString operator+(int bit, const BitString& tail) {
  BitString out;
  out.bits_.reserve(tail.size() + 1);
  out.bits_.push_back(bit ? '1' : '0');
  out.bits_ += tail.bits_;
  return out;
}

BitString operator+(const BitString& a, const BitString& b) {
  BitString out;
  out.bits_ = a.bits_ + b.bits_;
  return out;
}

}  // namespace beepcast
