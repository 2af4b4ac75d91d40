#include "corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>


namespace qwalk::testing {

namespace {

// |U e_a e_a^T U* - e_b e_b^T|_F = sqrt(2 s) with s = sum_{j != b} |U_ja|^2,
// summed directly so nothing cancels near a hit.
double vertex_distance(const CMatrix& u, int a, int b) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < u.rows(); ++j)
    if (j != b) s += std::norm(u(j, a));
  return std::sqrt(2.0 * s);
}

}  // namespace

Graph path_graph(int n) {
  std::vector<VertexPair> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return {n, edges};
}

Graph cycle_graph(int n) {
  std::vector<VertexPair> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return {n, edges};
}

Graph complete_graph(int n) {
  std::vector<VertexPair> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return {n, edges};
}

Graph star_graph(int leaves) {
  std::vector<VertexPair> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return {leaves + 1, edges};
}

OrientedGraph directed_cycle(int n) {
  std::vector<VertexPair> arcs;
  for (int i = 0; i < n; ++i) arcs.emplace_back(i, (i + 1) % n);
  return {n, arcs};
}

std::vector<Graph> graphs_on(int n) {
  std::vector<VertexPair> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  const auto m = static_cast<int>(slots.size());

  // slot index of each pair, for permuting masks
  std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
  for (int k = 0; k < m; ++k) index[slots[k].first][slots[k].second] = index[slots[k].second][slots[k].first] = k;

  std::vector<std::vector<int>> perm_maps;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> map(m);
    for (int k = 0; k < m; ++k) map[k] = index[perm[slots[k].first]][perm[slots[k].second]];
    perm_maps.push_back(std::move(map));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    bool canonical = true;
    for (const auto& map : perm_maps) {
      std::uint32_t image = 0;
      for (int k = 0; k < m; ++k)
        if (mask >> k & 1U) image |= 1U << map[k];
      if (image < mask) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    std::vector<VertexPair> edges;
    for (int k = 0; k < m; ++k)
      if (mask >> k & 1U) edges.push_back(slots[k]);
    out.emplace_back(n, edges);
  }
  return out;
}

std::vector<Graph> graph_corpus(int max_n) {
  std::vector<Graph> out;
  for (int n = 1; n <= max_n; ++n) {
    auto g = graphs_on(n);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

std::vector<NamedGraph> named_graphs() {
  std::vector<NamedGraph> out = {{"K2", complete_graph(2)},  {"P3", path_graph(3)},   {"P4", path_graph(4)},
                                 {"C4", cycle_graph(4)},     {"K3", complete_graph(3)}, {"C6", cycle_graph(6)},
                                 {"P5", path_graph(5)},      {"K4", complete_graph(4)}, {"C8", cycle_graph(8)},
                                 {"Q3", Graph(8, {{0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 3}, {2, 6}, {3, 7},
                                                  {4, 5}, {4, 6}, {5, 7}, {6, 7}})}};
  for (int leaves = 2; leaves <= 6; ++leaves) out.push_back({"K1," + std::to_string(leaves), star_graph(leaves)});
  // K2 and P3 side by side.
  out.push_back({"K2+P3", Graph(5, {{0, 1}, {2, 3}, {3, 4}})});
  return out;
}

bool is_connected(const Graph& g) { return graph_stats(g).connected; }

std::vector<NamedOriented> oriented_corpus() {
  std::vector<NamedOriented> out = {{"C3", directed_cycle(3)}, {"C5", directed_cycle(5)}};
  int index = 0;
  for (const Graph& g : graph_corpus(6)) {
    ++index;
    if (g.order() < 2 || !is_connected(g)) continue;
    if (const auto parts = bipartition(g))
      out.push_back({"natural#" + std::to_string(index), natural_orientation(g, *parts)});
  }
  for (const Graph& g : graph_corpus(4)) {
    if (g.order() < 2 || !is_connected(g)) continue;
    const auto& edges = g.edges();
    const auto m = static_cast<int>(edges.size());
    for (std::uint32_t flips = 0; flips < (1U << m); ++flips) {
      std::vector<VertexPair> arcs;
      for (int k = 0; k < m; ++k)
        arcs.push_back(flips >> k & 1U ? VertexPair{edges[k].second, edges[k].first} : edges[k]);
      out.push_back({"orientation", OrientedGraph(g.order(), arcs)});
    }
  }
  return out;
}

GraphClassification classify(const CMatrix& h, bool real_source, const OracleSettings& s) {
  const auto n = static_cast<int>(h.rows());
  const double target = 1.0 / n;
  const double slope = 2.0 * std::max(1.0, h.norm());
  std::vector<oracle::Objective> objectives;
  for (int a = 0; a < n; ++a) {
    objectives.push_back({[a](const CMatrix& u) { return vertex_distance(u, a, a); }, slope});
    if (real_source) {
      // |Im(u u*)|_F^2 = 2 sum_{i<j} (x_j y_i - x_i y_j)^2 for u = x + iy.
    objectives.push_back({[a, n](const CMatrix& u) {
                              double sum = 0.0;
                              for (int i = 0; i < n; ++i)
                                for (int j = i + 1; j < n; ++j) {
                                  const cplx ui = u(i, a);
                                  const cplx uj = u(j, a);
                                  const double w = uj.real() * ui.imag() - ui.real() * uj.imag();
                                  sum += w * w;
                                }
                              return std::sqrt(2.0 * sum);
                            },
                            slope});
    } else {
      objectives.push_back({[a, n](const CMatrix& u) {
                              double best = 2.0;
                              for (int b = 0; b < n; ++b)
                                if (b != a) best = std::min(best, vertex_distance(u, a, b));
                              return best;
                            },
                            slope});
    }
    objectives.push_back(oracle::flatness_objective(h, a));
  }
  objectives.push_back(oracle::uniform_flatness_objective(h));

  const auto scans =
      oracle::scan_objectives(h, {0.0, s.t_max}, s.step, objectives, std::max(s.accept_tol, s.flat_tol));

  GraphClassification out;
  for (int a = 0; a < n; ++a) {
    VertexClassification v;
    const auto& ret = scans[3 * a];
    const auto& tr = scans[3 * a + 1];
    const auto& fl = scans[3 * a + 2];
    for (const auto& m : ret.minima)
      if (m.value <= s.accept_tol) {
        v.returns = true;
        v.first_return = m.t;
        break;
      }
    for (const auto& m : tr.minima) {
      if (m.value > s.accept_tol) continue;
      // A real (or vertex) image that is the initial state again is a return.
      const double moved = vertex_distance(oracle::walk_matrix(h, m.t), a, a);
      if (moved > s.accept_tol) {
        v.transfers = true;
        v.first_transfer = m.t;
        break;
      }
    }
    for (const auto& m : fl.minima)
      if (m.value <= s.flat_tol) {
        v.flat = true;
        v.flat_time = m.t;
        break;
      }
    v.flat_floor = fl.floor;
    out.vertices.push_back(v);
  }
  for (const auto& m : scans.back().minima)
    if (m.value <= s.flat_tol) {
      out.uniform_flat = true;
      out.uniform_time = m.t;
      break;
    }
  return out;
}

}  // namespace qwalk::testing
