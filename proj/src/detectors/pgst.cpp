#include <algorithm>
#include <cmath>
#include <limits>

#include "qwalk/detectors.hpp"
#include "qwalk/error.hpp"
#include "qwalk/kernels.hpp"

namespace qwalk {

PgstEnumeration pgst_candidates(const DensityMatrix& p, const BlockDecomposition& b, const SpectralDecomposition& d,
                                const DetectorOptions& opt) {
  if (p.order() != d.order() || b.order != d.order()) throw InvalidArgument("pgst_candidates: dimension mismatch");
  const auto pairs = b.support.upper();
  const auto k = static_cast<int>(pairs.size());

  PgstEnumeration out;
  out.pattern_count = k < 64 ? (std::uint64_t{1} << k) : std::numeric_limits<std::uint64_t>::max();
  if (k > opt.pgst_cap) {
    out.complete = false;
    return out;
  }

  const int n = p.order();
  CMatrix diagonal = CMatrix::Zero(n, n);
  for (int r : b.support.diagonal()) diagonal += b.blocks.at({r, r});
  std::vector<CMatrix> symmetric;
  for (const auto& [r, s] : pairs) symmetric.push_back(b.blocks.at({r, s}) + b.blocks.at({s, r}));

  const double psd_tol = kDefaultStateTol * std::max(1.0, static_cast<double>(n));
  Eigen::SelfAdjointEigenSolver<CMatrix> solver;
  for (std::uint64_t mask = 0; mask < out.pattern_count; ++mask) {
    CMatrix q = diagonal;
    SignPattern signs;
    for (int i = 0; i < k; ++i) {
      const int eps = (mask >> i) & 1U ? -1 : 1;
      signs.eps[pairs[i]] = eps;
      kernels::accumulate_scaled(cplx(eps, 0.0), flat(symmetric[i]), flat(q));
    }
    solver.compute(q, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("pgst_candidates: eigensolver failed");
    if (solver.eigenvalues().minCoeff() < -psd_tol) continue;
    out.candidates.push_back({std::move(signs), DensityMatrix::from_evolution(std::move(q))});
  }
  return out;
}

WitnessSearch pgst_witness_search(const DensityMatrix& p, const DensityMatrix& q, const SpectralDecomposition& d,
                                  double t_max, double accept_tol, double step) {
  if (!(t_max > 0.0)) throw InvalidArgument("pgst_witness_search: t_max must be positive");
  if (p.order() != d.order() || q.order() != d.order()) throw InvalidArgument("pgst_witness_search: dimension mismatch");
  if (step <= 0.0) step = std::min(1e-2, t_max / 2000.0);
  step = std::min(step, t_max);

  const BlockDecomposition blocks = block_decompose(p, d);
  auto objective = [&](double t) {
    return std::sqrt(kernels::distance_sq(flat(evolve_matrix(blocks, t)), flat(q.matrix())));
  };
  const double slope = 2.0 * std::max(1.0, d.norm());
  const auto minima = search_minima(objective, step, t_max, step, slope * step + accept_tol);

  WitnessSearch best{t_max, std::numeric_limits<double>::infinity()};
  for (const auto& m : minima)
    if (m.value < best.residual) best = {m.t, m.value};
  return best;
}

}  // namespace qwalk
