#include <algorithm>

#include "qwalk/detectors.hpp"
#include "qwalk/error.hpp"

namespace qwalk {

namespace {

bool cancellation_free(const OrientedGraph& x) {
  const auto parts = bipartition(x.underlying());
  if (!parts) return false;
  const auto& arcs = x.arcs();
  return std::all_of(arcs.begin(), arcs.end(), [&](const VertexPair& arc) {
    return parts->side[arc.first] == parts->side[arcs.front().first];
  });
}

VertexBounds bounds_from(const GraphStats& stats, const SpectralDecomposition& d, int a, bool ecc_applies,
                         const DetectorOptions& opt) {
  if (a < 0 || a >= d.order()) throw InvalidArgument("periodic_vertex_bounds: vertex out of range");
  if (!stats.connected) throw InvalidArgument("periodic_vertex_bounds: graph is disconnected");

  const BlockDecomposition blocks = block_decompose(vertex_state(d.order(), a), d, opt.block_tol);
  const RatioStatus status = ratio_condition(blocks.support, d.eigenvalues(), opt.ratio).status;

  VertexBounds out;
  out.ecc_plus_one = stats.eccentricity[a] + 1;
  out.support_size = static_cast<int>(blocks.support.diagonal().size());
  out.max_valency = stats.max_valency;
  out.upper = 2 * stats.max_valency + 1;
  out.periodic = status == RatioStatus::certified || status == RatioStatus::stationary;
  out.ecc_bound_applies = ecc_applies;
  out.consistent = (!ecc_applies || out.ecc_plus_one <= out.support_size) &&
                   (!out.periodic || out.support_size <= out.upper);
  return out;
}

}  // namespace

VertexBounds periodic_vertex_bounds(const Graph& x, const SpectralDecomposition& d, int a, const DetectorOptions& opt) {
  if (x.order() != d.order()) throw InvalidArgument("periodic_vertex_bounds: dimension mismatch");
  return bounds_from(graph_stats(x), d, a, true, opt);
}

VertexBounds periodic_vertex_bounds(const OrientedGraph& x, const SpectralDecomposition& d, int a,
                                    const DetectorOptions& opt) {
  if (x.order() != d.order()) throw InvalidArgument("periodic_vertex_bounds: dimension mismatch");
  return bounds_from(graph_stats(x), d, a, cancellation_free(x), opt);
}

}  // namespace qwalk
