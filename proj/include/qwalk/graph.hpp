#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwalk/linalg.hpp"

namespace qwalk {

/// Vertex pair. For Graph edges the pair is normalized to first < second;
/// for OrientedGraph arcs it is (tail, head).
using VertexPair = std::pair<int, int>;

/// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;

  /// Throws InvalidArgument on loops, duplicate edges, or out-of-range
  /// endpoints. Edges are normalized and sorted.
  Graph(int n, std::vector<VertexPair> edges);

  int order() const noexcept { return n_; }
  const std::vector<VertexPair>& edges() const noexcept { return edges_; }

  IMatrix adjacency() const;
  std::vector<std::vector<int>> neighbours() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  std::vector<VertexPair> edges_;
};

/// Oriented graph: at most one arc per unordered pair, no loops.
class OrientedGraph {
 public:
  OrientedGraph() = default;
  OrientedGraph(int n, std::vector<VertexPair> arcs);

  int order() const noexcept { return n_; }
  const std::vector<VertexPair>& arcs() const noexcept { return arcs_; }

  Graph underlying() const;

  friend bool operator==(const OrientedGraph&, const OrientedGraph&) = default;

 private:
  int n_ = 0;
  std::vector<VertexPair> arcs_;
};

/// Two-colouring; side[v] is 0 or 1.
struct Bipartition {
  std::vector<int> side;

  std::vector<int> part(int which) const;
  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

/// S[u][v] = 1 for an arc u->v, -1 for v->u, 0 otherwise.
IMatrix skew_adjacency(const OrientedGraph& x);

/// Orients every edge from the second part to the first, so that with the
/// first part listed first S = [[0, -B], [B^T, 0]].
OrientedGraph natural_orientation(const Graph& y, const Bipartition& parts);

/// Breadth-first 2-colouring. In each component the lowest-index vertex is
/// placed in part 0. Empty when the graph has an odd cycle.
std::optional<Bipartition> bipartition(const Graph& y);

struct GraphStats {
  int max_valency = 0;
  bool connected = false;
  /// Per-vertex eccentricity on the underlying graph; empty when the graph
  /// is disconnected (eccentricity undefined).
  std::vector<int> eccentricity;
};

GraphStats graph_stats(const Graph& x);
GraphStats graph_stats(const OrientedGraph& x);

// --- text formats --------------------------------------------------------

enum class GraphFormat { edge_list, graph6, json };

GraphFormat parse_format_name(std::string_view name);
std::string_view format_name(GraphFormat format) noexcept;

/// Parsed input together with the original label of each dense vertex.
template <typename G>
struct Labelled {
  G graph;
  std::vector<long long> labels;
};

/// Edge list: optional header line "n <count>", then one "u v" pair per line;
/// a line with a single label declares an isolated vertex; '#' starts a
/// comment. Without a header, the distinct labels are remapped to 0..n-1 in
/// increasing order. With a header, labels must lie in [0, count).
Labelled<Graph> parse_graph(std::string_view text, GraphFormat format);

/// Arc list (same syntax as the edge list, u -> v) or JSON with "arcs".
/// graph6 has no arc semantics and is rejected.
Labelled<OrientedGraph> parse_oriented(std::string_view text, GraphFormat format);

std::string serialize_graph(const Graph& x, GraphFormat format);
std::string serialize_oriented(const OrientedGraph& x, GraphFormat format);

}  // namespace qwalk
