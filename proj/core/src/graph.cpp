#include "hopper/graph.hpp"

#include "hopper/errors.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace hopper {

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u == v || has_edge(u, v)) return;
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  ++edges_;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  const auto& a = adjacency_[u];
  return std::find(a.begin(), a.end(), v) != a.end();
}

std::vector<long> bfs_distances(const Graph& g, std::size_t source) {
  std::vector<long> dist(g.size(), kUnreachable);
  std::queue<std::size_t> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    for (auto v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

std::size_t graph_diameter(const Graph& g) {
  long best = 0;
  for (std::size_t s = 0; s < g.size(); ++s) {
    for (long d : bfs_distances(g, s)) {
      if (d == kUnreachable) throw Disconnected("graph is not connected");
      best = std::max(best, d);
    }
  }
  return static_cast<std::size_t>(best);
}

ShortestPaths count_shortest_paths(const Graph& g, std::size_t s, std::size_t t) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<long> dist(g.size(), kUnreachable);
  std::vector<std::uint64_t> count(g.size(), 0);
  std::queue<std::size_t> q;
  dist[s] = 0;
  count[s] = 1;
  q.push(s);
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    if (dist[t] != kUnreachable && dist[u] >= dist[t]) continue;
    for (auto v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
      if (dist[v] == dist[u] + 1) count[v] = count[v] > kMax - count[u] ? kMax : count[v] + count[u];
    }
  }
  if (dist[t] == kUnreachable) throw Disconnected("target node is unreachable");
  return {static_cast<std::size_t>(dist[t]), count[t]};
}

}  // namespace hopper
