#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace beepcast {

using NodeId = std::size_t;
using Edge = std::pair<NodeId, NodeId>;

// Anonymous undirected connected network with a distinguished source.
// Node indices exist for the simulator's bookkeeping only; programs never see them.
class Graph {
 public:
  // Validates: indices in range, no self-loops, no duplicate edges, connected.
  // Throws Error(invalid_graph).
  Graph(std::size_t node_count, std::vector<Edge> edges, NodeId source = 0);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  NodeId source() const noexcept { return source_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }  // sorted, u < v
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  NodeId source_;
};

struct LevelMap {
  std::vector<unsigned> level;
  unsigned eccentricity = 0;  // D

  // Nodes grouped by level, ascending node index within a level.
  std::vector<std::vector<NodeId>> by_level() const;
};

LevelMap compute_levels(const Graph& g);

Graph make_single();
Graph make_path(unsigned D);        // D + 1 nodes, source at one end
Graph make_star(std::size_t n);     // n nodes, source at the centre
Graph make_E(unsigned D);           // lower-bound family, D >= 2, Error(invalid_D) otherwise
Graph make_random_connected(std::size_t n, double density, std::uint64_t seed);

// `nodes=<n> source=<idx>` then one `u v` line per edge.
Graph read_graph(std::istream& is);
void write_graph(std::ostream& os, const Graph& g);

}  // namespace beepcast
