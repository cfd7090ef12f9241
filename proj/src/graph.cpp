#include "beepcast/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>

#include "beepcast/error.hpp"

namespace beepcast {

namespace {

constexpr unsigned kUnreached = ~0U;

std::vector<unsigned> bfs(const std::vector<std::vector<NodeId>>& adjacency, NodeId source) {
  std::vector<unsigned> dist(adjacency.size(), kUnreached);
  std::queue<NodeId> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : adjacency[u]) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

}  // namespace

Graph::Graph(std::size_t node_count, std::vector<Edge> edges, NodeId source)
    : edges_(std::move(edges)), adjacency_(node_count), source_(source) {
  if (node_count == 0) throw Error(ErrorCode::invalid_graph, "graph needs at least one node");
  if (source >= node_count) throw Error(ErrorCode::invalid_graph, "source index out of range");

  for (auto& [u, v] : edges_) {
    if (u >= node_count || v >= node_count) {
      throw Error(ErrorCode::invalid_graph,
                  "edge " + std::to_string(u) + "-" + std::to_string(v) + " out of range");
    }
    if (u == v) throw Error(ErrorCode::invalid_graph, "self-loop at " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw Error(ErrorCode::invalid_graph,
                "duplicate edge " + std::to_string(dup->first) + "-" + std::to_string(dup->second));
  }
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());

  const auto dist = bfs(adjacency_, source_);
  if (std::find(dist.begin(), dist.end(), kUnreached) != dist.end()) {
    throw Error(ErrorCode::invalid_graph, "graph is not connected");
  }
}

std::vector<std::vector<NodeId>> LevelMap::by_level() const {
  std::vector<std::vector<NodeId>> out(eccentricity + 1);
  for (NodeId v = 0; v < level.size(); ++v) out[level[v]].push_back(v);
  return out;
}

LevelMap compute_levels(const Graph& g) {
  std::vector<std::vector<NodeId>> adjacency(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto nb = g.neighbors(v);
    adjacency[v].assign(nb.begin(), nb.end());
  }
  LevelMap out;
  out.level = bfs(adjacency, g.source());
  out.eccentricity = *std::max_element(out.level.begin(), out.level.end());
  return out;
}

Graph make_single() { return Graph(1, {}, 0); }

Graph make_path(unsigned D) {
  std::vector<Edge> edges;
  for (NodeId v = 0; v < D; ++v) edges.emplace_back(v, v + 1);
  return Graph(D + 1, std::move(edges), 0);
}

Graph make_star(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "star needs at least one node");
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Graph(n, std::move(edges), 0);
}

Graph make_E(unsigned D) {
  if (D < 2) throw Error(ErrorCode::invalid_D, "E_D is defined for D >= 2, got " + std::to_string(D));
  // Node 0 is the source; level l >= 1 holds nodes 2l-1 and 2l.
  std::vector<Edge> edges{{0, 1}, {0, 2}};
  for (unsigned l = 1; l < D; ++l) {
    for (NodeId a : {2 * l - 1, 2 * l}) {
      for (NodeId b : {2 * l + 1, 2 * l + 2}) edges.emplace_back(a, b);
    }
  }
  return Graph(2 * D + 1, std::move(edges), 0);
}

Graph make_random_connected(std::size_t n, double density, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "random graph needs at least one node");
  if (!(density >= 0.0 && density <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "edge density must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);

  // Random spanning tree over a shuffled order, then independent extra edges.
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin() + 1, order.end(), rng);

  std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
  std::vector<Edge> edges;
  auto add = [&](NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    present[a][b] = true;
    edges.emplace_back(a, b);
  };
  for (std::size_t k = 1; k < n; ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    add(order[pick(rng)], order[k]);
  }
  std::bernoulli_distribution coin(density);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (!present[a][b] && coin(rng)) add(a, b);
    }
  }
  return Graph(n, std::move(edges), 0);
}

Graph read_graph(std::istream& is) {
  std::string line;
  auto next_content_line = [&]() -> bool {
    while (std::getline(is, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_content_line()) throw Error(ErrorCode::parse_error, "empty graph file");

  std::size_t nodes = 0;
  NodeId source = 0;
  bool have_nodes = false, have_source = false;
  std::istringstream header(line);
  std::string field;
  while (header >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::parse_error, "bad header field '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    try {
      if (key == "nodes") {
        nodes = std::stoul(value);
        have_nodes = true;
      } else if (key == "source") {
        source = std::stoul(value);
        have_source = true;
      } else {
        throw Error(ErrorCode::parse_error, "unknown header key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::parse_error, "bad header value '" + field + "'");
    }
  }
  if (!have_nodes || !have_source) {
    throw Error(ErrorCode::parse_error, "header must read `nodes=<n> source=<idx>`");
  }

  std::vector<Edge> edges;
  while (next_content_line()) {
    std::istringstream row(line);
    long long u = -1, v = -1;
    std::string rest;
    if (!(row >> u >> v) || (row >> rest) || u < 0 || v < 0) {
      throw Error(ErrorCode::parse_error, "bad edge line '" + line + "'");
    }
    if (u >= v) throw Error(ErrorCode::parse_error, "edge lines need u < v: '" + line + "'");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return Graph(nodes, std::move(edges), source);
}

void write_graph(std::ostream& os, const Graph& g) {
  os << "nodes=" << g.node_count() << " source=" << g.source() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

}  // namespace beepcast
