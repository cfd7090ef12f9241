#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

namespace beepcast {

// A finite binary word. Stored as '0'/'1' characters so that it prints and
// compares without conversion.
class BitString {
 public:
  BitString() = default;

  // Throws Error(parse_error) on any character other than '0' or '1'.
  static BitString parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  // 1-based access would mirror the usual notation; we keep C++ 0-based.
  int operator[](std::size_t i) const { return bits_[i] == '1' ? 1 : 0; }
  int back() const { return bits_.back() == '1' ? 1 : 0; }

  void push_back(int bit) { bits_.push_back(bit ? '1' : '0'); }
  BitString prefix(std::size_t length) const;
  bool is_prefix_of(const BitString& other) const noexcept;

  std::size_t count_ones() const noexcept;
  std::size_t count_zeros() const noexcept { return size() - count_ones(); }

  const std::string& str() const noexcept { return bits_; }

  friend BitString operator+(int bit, const BitString& tail);
  friend BitString operator+(const BitString& a, const BitString& b);
  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::string bits_;
};

}  // namespace beepcast
