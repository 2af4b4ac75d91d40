#include <algorithm>
#include <deque>
#include <set>

#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"

namespace qwalk {

namespace {

void check_pair(int n, const VertexPair& p, const char* what) {
  if (p.first < 0 || p.second < 0 || p.first >= n || p.second >= n)
    throw InvalidArgument(std::string(what) + " endpoint out of range: (" + std::to_string(p.first) + ", " +
                          std::to_string(p.second) + ") with n = " + std::to_string(n));
  if (p.first == p.second) throw InvalidArgument(std::string(what) + " is a loop at vertex " + std::to_string(p.first));
}

std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int source) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

Graph::Graph(int n, std::vector<VertexPair> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw InvalidArgument("negative vertex count");
  for (auto& e : edges_) {
    check_pair(n, e, "edge");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    throw InvalidArgument("duplicate edge (" + std::to_string(dup->first) + ", " + std::to_string(dup->second) + ")");
}

IMatrix Graph::adjacency() const {
  IMatrix a = IMatrix::Zero(n_, n_);
  for (const auto& [u, v] : edges_) {
    a(u, v) = 1;
    a(v, u) = 1;
  }
  return a;
}

std::vector<std::vector<int>> Graph::neighbours() const {
  std::vector<std::vector<int>> adj(n_);
  for (const auto& [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

OrientedGraph::OrientedGraph(int n, std::vector<VertexPair> arcs) : n_(n), arcs_(std::move(arcs)) {
  if (n < 0) throw InvalidArgument("negative vertex count");
  std::set<VertexPair> seen;
  for (const auto& a : arcs_) {
    check_pair(n, a, "arc");
    const VertexPair key{std::min(a.first, a.second), std::max(a.first, a.second)};
    if (!seen.insert(key).second)
      throw InvalidArgument("two arcs on the pair {" + std::to_string(key.first) + ", " + std::to_string(key.second) +
                            "}");
  }
  std::sort(arcs_.begin(), arcs_.end());
}

Graph OrientedGraph::underlying() const { return Graph(n_, arcs_); }

std::vector<int> Bipartition::part(int which) const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(side.size()); ++v)
    if (side[v] == which) out.push_back(v);
  return out;
}

IMatrix skew_adjacency(const OrientedGraph& x) {
  IMatrix s = IMatrix::Zero(x.order(), x.order());
  for (const auto& [u, v] : x.arcs()) {
    s(u, v) = 1;
    s(v, u) = -1;
  }
  return s;
}

OrientedGraph natural_orientation(const Graph& y, const Bipartition& parts) {
  if (static_cast<int>(parts.side.size()) != y.order())
    throw InvalidArgument("bipartition size does not match the graph order");
  for (int s : parts.side)
    if (s != 0 && s != 1) throw InvalidArgument("bipartition sides must be 0 or 1");
  std::vector<VertexPair> arcs;
  arcs.reserve(y.edges().size());
  for (const auto& [u, v] : y.edges()) {
    if (parts.side[u] == parts.side[v])
      throw InvalidArgument("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") does not cross the bipartition");
    // second part -> first part
    if (parts.side[u] == 1)
      arcs.emplace_back(u, v);
    else
      arcs.emplace_back(v, u);
  }
  return OrientedGraph(y.order(), std::move(arcs));
}

std::optional<Bipartition> bipartition(const Graph& y) {
  const auto adj = y.neighbours();
  Bipartition parts{std::vector<int>(y.order(), -1)};
  for (int start = 0; start < y.order(); ++start) {
    if (parts.side[start] >= 0) continue;
    parts.side[start] = 0;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adj[u]) {
        if (parts.side[v] < 0) {
          parts.side[v] = 1 - parts.side[u];
          queue.push_back(v);
        } else if (parts.side[v] == parts.side[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return parts;
}

GraphStats graph_stats(const Graph& x) {
  GraphStats stats;
  const auto adj = x.neighbours();
  for (const auto& nb : adj) stats.max_valency = std::max(stats.max_valency, static_cast<int>(nb.size()));
  if (x.order() == 0) return stats;

  const auto from_zero = bfs_distances(adj, 0);
  stats.connected = std::none_of(from_zero.begin(), from_zero.end(), [](int d) { return d < 0; });
  if (!stats.connected) return stats;

  stats.eccentricity.resize(x.order());
  for (int v = 0; v < x.order(); ++v) {
    const auto dist = bfs_distances(adj, v);
    stats.eccentricity[v] = *std::max_element(dist.begin(), dist.end());
  }
  return stats;
}

GraphStats graph_stats(const OrientedGraph& x) { return graph_stats(x.underlying()); }

}  // namespace qwalk
