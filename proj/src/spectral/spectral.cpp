#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwalk/error.hpp"
#include "qwalk/kernels.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

namespace {

// Eigenpairs in decreasing eigenvalue order.
struct Eigenpairs {
  Eigen::VectorXd values;
  CMatrix vectors;
};

Eigenpairs solve_hermitian(const CMatrix& h, bool real_source) {
  Eigenpairs out;
  if (real_source) {
    const Eigen::MatrixXd sym = h.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse().cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
  }
  return out;
}

}  // namespace

int SpectralDecomposition::index_of(double value) const noexcept {
  for (int r = 0; r < size(); ++r)
    if (std::abs(theta_[r] - value) <= threshold_) return r;
  return -1;
}

SpectralDecomposition spectral_decompose(const CMatrix& h, double tol, int max_order) {
  if (!(tol > 0.0)) throw InvalidArgument("spectral_decompose: tolerance must be positive");
  if (h.rows() != h.cols()) throw InvalidArgument("spectral_decompose: matrix is not square");
  if (h.rows() == 0) throw InvalidArgument("spectral_decompose: empty matrix");
  if (h.rows() > max_order)
    throw InvalidArgument("spectral_decompose: order " + std::to_string(h.rows()) + " exceeds the cap " +
                          std::to_string(max_order));
  if (!h.allFinite()) throw InvalidArgument("spectral_decompose: non-finite entries");
  const double skew = (h - h.adjoint()).norm();
  if (skew > tol) throw InvalidArgument("spectral_decompose: matrix is not Hermitian (|H - H*| = " + std::to_string(skew) + ")");

  SpectralDecomposition d;
  d.tol_ = tol;
  d.real_source_ = h.imag().cwiseAbs().maxCoeff() == 0.0;
  d.source_ = (h + h.adjoint()) / 2.0;
  if (d.real_source_) d.source_.imag().setZero();

  const Eigenpairs eig = solve_hermitian(d.source_, d.real_source_);
  const Eigen::Index n = eig.values.size();
  d.norm_ = std::max(std::abs(eig.values(0)), std::abs(eig.values(n - 1)));
  d.threshold_ = tol * std::max(1.0, d.norm_);

  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i < n) {
      const double gap = eig.values(i - 1) - eig.values(i);
      if (gap > d.threshold_ / 10.0 && gap <= 10.0 * d.threshold_) {
        std::ostringstream msg;
        msg << "eigenvalue gap " << gap << " near grouping threshold " << d.threshold_ << " at " << eig.values(i);
        d.warnings_.push_back(msg.str());
      }
      if (gap <= d.threshold_) continue;
    }
    const Eigen::Index count = i - start;
    const auto block = eig.vectors.middleCols(start, count);
    d.theta_.push_back(eig.values.segment(start, count).mean());
    d.mult_.push_back(static_cast<int>(count));
    d.idempotents_.push_back(block * block.adjoint());
    start = i;
  }
  return d;
}

CMatrix hermitian_matrix(const Graph& x) { return x.adjacency().cast<double>().cast<cplx>(); }

CMatrix hermitian_matrix(const OrientedGraph& x) {
  return skew_adjacency(x).cast<double>().cast<cplx>() * cplx(0.0, -1.0);
}

CMatrix transition_matrix(const SpectralDecomposition& d, double t) {
  CMatrix u = CMatrix::Zero(d.order(), d.order());
  for (int r = 0; r < d.size(); ++r)
    kernels::accumulate_scaled(std::polar(1.0, t * d.eigenvalues()[r]), flat(d.idempotents()[r]), flat(u));
  return u;
}

std::vector<CVector> vertex_components(const SpectralDecomposition& d, int a) {
  if (a < 0 || a >= d.order()) throw InvalidArgument("vertex out of range: " + std::to_string(a));
  std::vector<CVector> out;
  out.reserve(d.size());
  for (const auto& e : d.idempotents()) out.push_back(e.col(a));
  return out;
}

VertexRelation vertex_spectral_relation(const SpectralDecomposition& d, int a, int b, double tol) {
  if (a == b) throw InvalidArgument("vertex_spectral_relation: vertices must differ");
  const auto xa = vertex_components(d, a);
  const auto xb = vertex_components(d, b);

  VertexRelation rel;
  for (int r = 0; r < d.size(); ++r)
    if (std::abs(xa[r].norm() - xb[r].norm()) > tol) return rel;
  rel.kind = VertexRelation::Kind::cospectral;

  std::vector<int> signs;
  for (int r = 0; r < d.size(); ++r) {
    if (xa[r].norm() <= tol) {
      signs.push_back(1);
    } else if ((xa[r] - xb[r]).norm() <= tol) {
      signs.push_back(1);
    } else if ((xa[r] + xb[r]).norm() <= tol) {
      signs.push_back(-1);
    } else {
      return rel;
    }
  }
  rel.kind = VertexRelation::Kind::strongly_cospectral;
  rel.signs = std::move(signs);
  return rel;
}

bool interlacing_check(const CMatrix& h, std::span<const int> subset, double tol) {
  const int n = static_cast<int>(h.rows());
  const int k = static_cast<int>(subset.size());
  if (k == 0 || k >= n) throw InvalidArgument("interlacing_check: subset must be nonempty and proper");
  std::vector<int> idx(subset.begin(), subset.end());
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end() || idx.front() < 0 || idx.back() >= n)
    throw InvalidArgument("interlacing_check: invalid subset");

  CMatrix sub(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub(i, j) = h(idx[i], idx[j]);

  Eigen::SelfAdjointEigenSolver<CMatrix> full(h, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<CMatrix> part(sub, Eigen::EigenvaluesOnly);
  if (full.info() != Eigen::Success || part.info() != Eigen::Success)
    throw NumericalError("interlacing_check: eigensolver failed");
  const Eigen::VectorXd lam = full.eigenvalues().reverse();
  const Eigen::VectorXd mu = part.eigenvalues().reverse();
  for (int i = 0; i < k; ++i)
    if (mu(i) > lam(i) + tol || mu(i) < lam(i + n - k) - tol) return false;
  return true;
}

}  // namespace qwalk
