#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the code under test beyond the plain data types.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "beepcast/graph.hpp"

namespace oracle {

// Bit-by-bit scan: 1 per '0', 3 per '1'.
inline std::uint64_t cost(const std::string& word) {
  std::uint64_t total = 0;
  for (char ch : word) total += ch == '1' ? 3 : 1;
  return total;
}

inline bool pairwise_prefix_free(const std::vector<std::string>& words) {
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = 0; b < words.size(); ++b) {
      if (a == b) continue;
      const auto& x = words[a];
      const auto& y = words[b];
      if (x.size() <= y.size() && y.compare(0, x.size(), x) == 0) return false;
    }
  }
  return true;
}

// Table of w_0..w_n by unrolling w_i = w_{i-1} + w_{i-3}.
inline std::vector<std::uint64_t> narayana_table(unsigned n) {
  std::vector<std::uint64_t> w{1, 1, 1};
  while (w.size() <= n) w.push_back(w[w.size() - 1] + w[w.size() - 3]);
  w.resize(n + 1);
  return w;
}

// Table of w'_0..w'_n with w'_1 = w'_2 = 1 (index 0 unused, set to 0).
inline std::vector<std::uint64_t> fibonacci_table(unsigned n) {
  std::vector<std::uint64_t> w{0, 1, 1};
  while (w.size() <= n) w.push_back(w[w.size() - 1] + w[w.size() - 2]);
  w.resize(n + 1);
  return w;
}

inline unsigned ceil_log2(std::uint64_t x) {
  unsigned k = 0;
  while ((std::uint64_t{1} << k) < x) ++k;
  return k;
}

// All-pairs hop distances by Floyd-Warshall; row `source` gives the levels.
inline std::vector<unsigned> levels(const beepcast::Graph& g) {
  const std::size_t n = g.node_count();
  const unsigned inf = 1U << 20;
  std::vector<std::vector<unsigned>> d(n, std::vector<unsigned>(n, inf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d[g.source()];
}

// Round at which a level-l node appends the (j+1)-th bit of s (j 0-based).
inline std::uint64_t append_round(unsigned level, const std::string& s, std::size_t j) {
  return level + cost(s.substr(0, j)) + 3;
}

// Termination round of a level-l node; `inner` if it has a higher-level neighbour.
inline std::uint64_t termination_round(unsigned level, const std::string& s, bool inner) {
  return level + cost(s.substr(0, s.size() - 1)) + 3 + (inner && s.back() == '1' ? 1 : 0);
}

// Self-delimiting frame built from the decimal value directly.
inline std::string framed(std::uint64_t mu) {
  std::string binary;
  for (auto v = mu; v > 0; v /= 2) binary.insert(binary.begin(), static_cast<char>('0' + v % 2));
  std::string out = "10";
  for (char ch : binary) out += std::string(2, ch);
  return out + "10";
}

}  // namespace oracle
