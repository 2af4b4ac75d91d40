#pragma once

// Shared fixtures for the unit and acceptance tests: the graph corpus and the
// oracle classification of vertex states.

#include <string>
#include <vector>

#include "qwalk/detectors.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/oracle.hpp"

namespace qwalk::testing {

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
/// K_{1,leaves}, center 0.
Graph star_graph(int leaves);
OrientedGraph directed_cycle(int n);

/// One representative per isomorphism class on exactly n vertices (n <= 6),
/// as the lexicographically smallest adjacency bitmask.
std::vector<Graph> graphs_on(int n);
/// graphs_on(1) .. graphs_on(max_n).
std::vector<Graph> graph_corpus(int max_n = 6);

struct NamedGraph {
  std::string name;
  Graph graph;
};
std::vector<NamedGraph> named_graphs();

struct NamedOriented {
  std::string name;
  OrientedGraph graph;
};
/// Natural orientations of the connected bipartite corpus graphs, every
/// orientation of the connected graphs on at most 4 vertices, and the named
/// oriented examples.
std::vector<NamedOriented> oriented_corpus();

bool is_connected(const Graph& g);

/// Oracle verdicts for every vertex state of one graph, from a single scan of
/// U(t) = exp(itH) over (0, t_max].
struct VertexClassification {
  bool returns = false;
  double first_return = 0.0;
  /// Reaches a real state different from itself (real sources), or a
  /// different vertex state (oriented sources).
  bool transfers = false;
  double first_transfer = 0.0;
  bool flat = false;
  double flat_time = 0.0;
  double flat_floor = 0.0;
};

struct GraphClassification {
  std::vector<VertexClassification> vertices;
  bool uniform_flat = false;
  double uniform_time = 0.0;
};

struct OracleSettings {
  double t_max = 20.0;
  double step = oracle::kDefaultScanStep;
  double accept_tol = 1e-8;
  double flat_tol = 1e-9;
};

/// real_source selects the transfer objective: |Im P(t)| for graphs,
/// distance to the nearest other vertex state for oriented graphs.
GraphClassification classify(const CMatrix& h, bool real_source, const OracleSettings& s = {});

}  // namespace qwalk::testing
