#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "beepcast/bitstring.hpp"

namespace beepcast {

// Rounds a prefix consumes in the pipelined broadcast: one per 0, three per 1.
std::uint64_t cost(const BitString& x) noexcept;

// Predicted post-wake energy of transmitting x bit by bit: each 0 costs one
// listen, each 1 a listen plus a relay beep.
std::uint64_t energy_cost(const BitString& x) noexcept;

// Narayana's cows sequence, w_0 = w_1 = w_2 = 1, w_i = w_{i-1} + w_{i-3}.
std::uint64_t narayana(unsigned i);

// Fibonacci variant, w'_1 = w'_2 = 1. Throws Error(invalid_index) for i = 0.
std::uint64_t fibonacci(unsigned i);

inline constexpr unsigned kClosedFormMaxIndex = 60;

// round(d * c^i) with c, d the real roots of x^3 - x^2 - 1 and
// 31x^3 - 31x^2 + 9x - 1. Throws Error(index_too_large) past kClosedFormMaxIndex.
std::uint64_t narayana_closed_form(unsigned i);

// The two real constants behind narayana_closed_form, found by bisection.
long double narayana_growth_root();
long double narayana_scale_root();

enum class CodebookKind { narayana, fibonacci };

std::string_view to_string(CodebookKind kind);
CodebookKind parse_codebook_kind(std::string_view name);

std::uint64_t codebook_size(CodebookKind kind, unsigned i);

struct Codebook {
  CodebookKind kind = CodebookKind::narayana;
  unsigned index = 0;
  std::vector<BitString> words;  // canonical construction order
};

// 0-branch words first, then 1-branch words, recursively.
Codebook build_codebook(CodebookKind kind, unsigned i);

// Header line `kind=<k> index=<i> size=<n>` followed by one word per line.
void write_codebook(std::ostream& os, const Codebook& book);

bool is_prefix_free(const std::vector<BitString>& words);

// Smallest r with codebook_size(kind, r) >= m. Throws Error(invalid_m) if m < 2.
unsigned min_r(std::uint64_t m, CodebookKind kind = CodebookKind::narayana);

// Outcome of feeding a partial word to a decoder.
struct Decoded {
  bool complete = false;
  std::uint64_t value = 0;     // meaningful only when complete
  std::size_t consumed = 0;    // bits consumed when complete

  static Decoded incomplete() { return {}; }
  static Decoded done(std::uint64_t v, std::size_t n) { return {true, v, n}; }
  friend bool operator==(const Decoded&, const Decoded&) = default;
};

// The messages {1..m} mapped onto the first m words of codebook W_r.
class MessageSpace {
 public:
  explicit MessageSpace(std::uint64_t m, CodebookKind kind = CodebookKind::narayana);

  std::uint64_t m() const noexcept { return m_; }
  unsigned r() const noexcept { return r_; }
  CodebookKind kind() const noexcept { return kind_; }
  const std::vector<BitString>& words() const noexcept { return words_; }

  // mu in [1, m]; throws Error(out_of_range) otherwise.
  const BitString& encode(std::uint64_t mu) const;

  // Throws Error(not_a_prefix) when acc extends no word.
  Decoded decode(const BitString& acc) const;

  bool contains(const BitString& acc) const { return decode(acc).complete; }

 private:
  struct TrieNode {
    int child[2] = {-1, -1};
    std::uint64_t message = 0;  // 1-based, 0 for interior nodes
  };

  std::uint64_t m_;
  unsigned r_;
  CodebookKind kind_;
  std::vector<BitString> words_;
  std::vector<TrieNode> trie_;
};

// "10" + every bit of mu's binary representation doubled + "10".
BitString self_delimiting_encode(std::uint64_t mu);

// Incremental inverse; extra bits past the terminator are not consumed.
// Throws Error(malformed_stream) when the framing is violated.
Decoded self_delimiting_decode(const BitString& stream);

}  // namespace beepcast
