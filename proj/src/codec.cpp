#include "beepcast/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "beepcast/error.hpp"

namespace beepcast {

namespace {

// Codebooks past this size are refused rather than exhausting memory.
constexpr std::uint64_t kMaxCodebookWords = std::uint64_t{1} << 24;

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, unsigned i) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw Error(ErrorCode::index_too_large, "sequence value overflows at index " + std::to_string(i));
  }
  return a + b;
}

template <class F>
long double bisect(F f, long double lo, long double hi) {
  long double flo = f(lo);
  for (int iter = 0; iter < 200; ++iter) {
    long double mid = (lo + hi) / 2;
    long double fmid = f(mid);
    if (mid == lo || mid == hi) break;
    if ((fmid < 0) == (flo < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

std::vector<BitString> words_of(std::initializer_list<const char*> list) {
  std::vector<BitString> out;
  for (const char* w : list) out.push_back(BitString::parse(w));
  return out;
}

std::vector<BitString> join_branches(const std::vector<BitString>& zero_tail,
                                     const std::vector<BitString>& one_tail) {
  std::vector<BitString> out;
  out.reserve(zero_tail.size() + one_tail.size());
  for (const auto& w : zero_tail) out.push_back(0 + w);
  for (const auto& w : one_tail) out.push_back(1 + w);
  return out;
}

}  // namespace

std::uint64_t cost(const BitString& x) noexcept { return x.count_zeros() + 3 * x.count_ones(); }

std::uint64_t energy_cost(const BitString& x) noexcept {
  return x.count_zeros() + 2 * x.count_ones();
}

std::uint64_t narayana(unsigned i) {
  std::uint64_t a = 1, b = 1, c = 1;  // w_{k-2}, w_{k-1}, w_k for k = 2
  if (i <= 2) return 1;
  for (unsigned k = 3; k <= i; ++k) {
    std::uint64_t next = checked_add(c, a, k);
    a = b;
    b = c;
    c = next;
  }
  return c;
}

std::uint64_t fibonacci(unsigned i) {
  if (i == 0) throw Error(ErrorCode::invalid_index, "fibonacci codebooks start at index 1");
  std::uint64_t a = 1, b = 1;
  for (unsigned k = 3; k <= i; ++k) {
    std::uint64_t next = checked_add(a, b, k);
    a = b;
    b = next;
  }
  return b;
}

long double narayana_growth_root() {
  static const long double root =
      bisect([](long double x) { return x * x * x - x * x - 1; }, 1.0L, 2.0L);
  return root;
}

long double narayana_scale_root() {
  // 31x^3 - 31x^2 + 9x - 1 has a single real root; its local maximum is negative.
  static const long double root = bisect(
      [](long double x) { return ((31 * x - 31) * x + 9) * x - 1; }, 0.5L, 1.0L);
  return root;
}

std::uint64_t narayana_closed_form(unsigned i) {
  if (i > kClosedFormMaxIndex) {
    throw Error(ErrorCode::index_too_large,
                "closed form is only evaluated up to index " + std::to_string(kClosedFormMaxIndex));
  }
  const long double value = narayana_scale_root() * std::pow(narayana_growth_root(), static_cast<long double>(i));
  return static_cast<std::uint64_t>(std::floor(value + 0.5L));
}

std::string_view to_string(CodebookKind kind) {
  return kind == CodebookKind::narayana ? "narayana" : "fibonacci";
}

CodebookKind parse_codebook_kind(std::string_view name) {
  if (name == "narayana") return CodebookKind::narayana;
  if (name == "fibonacci") return CodebookKind::fibonacci;
  throw Error(ErrorCode::invalid_argument, "unknown codebook kind '" + std::string(name) + "'");
}

std::uint64_t codebook_size(CodebookKind kind, unsigned i) {
  return kind == CodebookKind::narayana ? narayana(i) : fibonacci(i);
}

Codebook build_codebook(CodebookKind kind, unsigned i) {
  if (codebook_size(kind, i) > kMaxCodebookWords) {
    throw Error(ErrorCode::index_too_large, "codebook of index " + std::to_string(i) + " is too large");
  }

  std::vector<std::vector<BitString>> books;
  if (kind == CodebookKind::narayana) {
    books = {words_of({"0"}), words_of({"1"}), words_of({"1"}), words_of({"0", "1"}),
             words_of({"00", "01", "1"}), words_of({"000", "001", "01", "1"})};
    for (unsigned k = 6; k <= i; ++k) books.push_back(join_branches(books[k - 1], books[k - 3]));
  } else {
    // Index 0 is a placeholder; fibonacci() already rejected i = 0.
    books = {{}, words_of({"0"}), words_of({"1"}), words_of({"0", "1"}), words_of({"00", "01", "1"})};
    for (unsigned k = 5; k <= i; ++k) books.push_back(join_branches(books[k - 1], books[k - 2]));
  }

  Codebook out;
  out.kind = kind;
  out.index = i;
  out.words = std::move(books[i]);
  return out;
}

void write_codebook(std::ostream& os, const Codebook& book) {
  os << "kind=" << to_string(book.kind) << " index=" << book.index << " size=" << book.words.size()
     << '\n';
  for (const auto& w : book.words) os << w.str() << '\n';
}

bool is_prefix_free(const std::vector<BitString>& words) {
  // In lexicographic order a word that prefixes any other word prefixes its successor.
  std::vector<const BitString*> sorted;
  sorted.reserve(words.size());
  for (const auto& w : words) sorted.push_back(&w);
  std::sort(sorted.begin(), sorted.end(), [](const BitString* a, const BitString* b) { return a->str() < b->str(); });
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k - 1]->is_prefix_of(*sorted[k])) return false;
  }
  return true;
}

unsigned min_r(std::uint64_t m, CodebookKind kind) {
  if (m < 2) throw Error(ErrorCode::invalid_m, "message space needs m >= 2, got " + std::to_string(m));
  unsigned r = kind == CodebookKind::narayana ? 0 : 1;
  while (codebook_size(kind, r) < m) ++r;
  return r;
}

MessageSpace::MessageSpace(std::uint64_t m, CodebookKind kind)
    : m_(m), r_(min_r(m, kind)), kind_(kind) {
  words_ = build_codebook(kind, r_).words;
  words_.resize(m);

  trie_.emplace_back();
  for (std::size_t k = 0; k < words_.size(); ++k) {
    int node = 0;
    for (std::size_t j = 0; j < words_[k].size(); ++j) {
      const int bit = words_[k][j];
      if (trie_[node].child[bit] < 0) {
        trie_[node].child[bit] = static_cast<int>(trie_.size());
        trie_.emplace_back();
      }
      node = trie_[node].child[bit];
    }
    trie_[node].message = k + 1;
  }
}

const BitString& MessageSpace::encode(std::uint64_t mu) const {
  if (mu < 1 || mu > m_) {
    throw Error(ErrorCode::out_of_range,
                "message " + std::to_string(mu) + " outside [1, " + std::to_string(m_) + "]");
  }
  return words_[mu - 1];
}

Decoded MessageSpace::decode(const BitString& acc) const {
  int node = 0;
  for (std::size_t j = 0; j < acc.size(); ++j) {
    if (trie_[node].message != 0) break;
    node = trie_[node].child[acc[j]];
    if (node < 0) throw Error(ErrorCode::not_a_prefix, "'" + acc.str() + "' extends no codeword");
  }
  const auto& leaf = trie_[node];
  if (leaf.message == 0) return Decoded::incomplete();
  if (words_[leaf.message - 1].size() != acc.size()) {
    throw Error(ErrorCode::not_a_prefix, "'" + acc.str() + "' runs past a codeword");
  }
  return Decoded::done(leaf.message, acc.size());
}

BitString self_delimiting_encode(std::uint64_t mu) {
  if (mu == 0) throw Error(ErrorCode::out_of_range, "self-delimiting encoding needs mu >= 1");
  BitString out = BitString::parse("10");
  int top = 63;
  while (((mu >> top) & 1U) == 0) --top;
  for (int b = top; b >= 0; --b) {
    const int bit = static_cast<int>((mu >> b) & 1U);
    out.push_back(bit);
    out.push_back(bit);
  }
  out.push_back(1);
  out.push_back(0);
  return out;
}

Decoded self_delimiting_decode(const BitString& stream) {
  auto malformed = [&](const std::string& why) {
    return Error(ErrorCode::malformed_stream, "'" + stream.str() + "': " + why);
  };
  if (stream.size() >= 1 && stream[0] != 1) throw malformed("header must start with 1");
  if (stream.size() >= 2 && stream[1] != 0) throw malformed("header must be 10");

  std::uint64_t value = 0;
  std::size_t payload_bits = 0;
  for (std::size_t pos = 2; pos + 1 < stream.size(); pos += 2) {
    const int hi = stream[pos];
    const int lo = stream[pos + 1];
    if (hi == lo) {
      if (payload_bits == 64) throw malformed("payload exceeds 64 bits");
      value = (value << 1) | static_cast<std::uint64_t>(hi);
      ++payload_bits;
    } else if (hi == 1) {
      if (value == 0) throw malformed("empty or zero payload");
      return Decoded::done(value, pos + 2);
    } else {
      throw malformed("pair 01 is neither data nor terminator");
    }
  }
  return Decoded::incomplete();
}

}  // namespace beepcast
