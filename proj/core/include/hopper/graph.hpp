#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hopper {

/// Undirected simple graph on nodes 0..n-1.
class Graph {
 public:
  explicit Graph(std::size_t nodes = 0) : adjacency_(nodes) {}

  void add_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const;

  std::size_t size() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t u) const { return adjacency_[u]; }

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t edges_ = 0;
};

inline constexpr long kUnreachable = -1;

std::vector<long> bfs_distances(const Graph& g, std::size_t source);

/// Largest shortest-path distance over all node pairs. Throws Disconnected.
std::size_t graph_diameter(const Graph& g);

struct ShortestPaths {
  std::size_t length = 0;
  std::uint64_t count = 0;  // saturates at UINT64_MAX
};

/// Length and number of distinct shortest paths between s and t.
/// Throws Disconnected if t is unreachable.
ShortestPaths count_shortest_paths(const Graph& g, std::size_t s, std::size_t t);

}  // namespace hopper
