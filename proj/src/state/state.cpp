#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwalk/arithmetic.hpp"
#include "qwalk/error.hpp"
#include "qwalk/kernels.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

namespace {

bool entries_rational(const CMatrix& m, long long max_den, double tol) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cplx z = m.data()[i];
    if (!rational_approx(z.real(), max_den, tol) || !rational_approx(z.imag(), max_den, tol)) return false;
  }
  return true;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix m, double tol, long long max_den) : m_(std::move(m)) {
  const double n = static_cast<double>(m_.rows());
  real_ = m_.imag().cwiseAbs().maxCoeff() <= tol;
  pure_ = (m_ * m_ - m_).norm() <= n * tol;
  rational_ = entries_rational(m_, max_den, tol);
}

DensityCheck check_density(const CMatrix& m, double tol) {
  DensityCheck check;
  if (m.rows() != m.cols() || m.rows() == 0) {
    check.failures.push_back("square");
    return check;
  }
  if (!m.allFinite()) {
    check.failures.push_back("finite");
    return check;
  }
  check.hermitian_residual = (m - m.adjoint()).norm();
  check.trace_residual = std::abs(m.trace() - cplx(1.0, 0.0));
  const CMatrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  check.min_eigenvalue = solver.eigenvalues().minCoeff();
  if (check.hermitian_residual > tol) check.failures.push_back("hermitian");
  if (check.trace_residual > tol) check.failures.push_back("trace");
  if (check.min_eigenvalue < -tol) check.failures.push_back("psd");
  return check;
}

DensityMatrix DensityMatrix::from_matrix(CMatrix m, double tol, long long max_den) {
  const DensityCheck check = check_density(m, tol);
  if (!check.failures.empty()) {
    std::ostringstream msg;
    msg << "not a density matrix (" << join(check.failures) << "): hermitian residual " << check.hermitian_residual
        << ", trace residual " << check.trace_residual << ", min eigenvalue " << check.min_eigenvalue;
    throw InvalidArgument(msg.str());
  }
  return DensityMatrix(std::move(m), tol, max_den);
}

DensityMatrix DensityMatrix::from_evolution(CMatrix m, double tol, long long max_den) {
  const double scale = std::max<double>(1.0, static_cast<double>(m.rows()));
  if (m.rows() != m.cols() || m.rows() == 0) throw InvalidArgument("density matrix must be square and nonempty");
  if ((m - m.adjoint()).norm() > scale * tol) throw InvalidArgument("evolved state is not Hermitian");
  if (std::abs(m.trace() - cplx(1.0, 0.0)) > scale * tol) throw InvalidArgument("evolved state lost unit trace");
  return DensityMatrix(std::move(m), tol, max_den);
}

DensityMatrix vertex_state(int n, int a) {
  if (n <= 0 || a < 0 || a >= n)
    throw InvalidArgument("vertex_state: vertex " + std::to_string(a) + " out of range for n = " + std::to_string(n));
  CMatrix m = CMatrix::Zero(n, n);
  m(a, a) = 1.0;
  return DensityMatrix::from_evolution(std::move(m));
}

DensityMatrix pure_state(const CVector& z, double tol) {
  if (z.size() == 0 || std::abs(z.norm() - 1.0) > tol) throw InvalidArgument("pure_state: vector is not a unit vector");
  return DensityMatrix::from_evolution(z * z.adjoint(), tol);
}

// --- support ---------------------------------------------------------------

EigenvalueSupport::EigenvalueSupport(std::vector<IndexPair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

std::vector<IndexPair> EigenvalueSupport::off_diagonal() const {
  std::vector<IndexPair> out;
  for (const auto& p : pairs_)
    if (p.first != p.second) out.push_back(p);
  return out;
}

std::vector<IndexPair> EigenvalueSupport::upper() const {
  std::vector<IndexPair> out;
  for (const auto& p : pairs_)
    if (p.first < p.second) out.push_back(p);
  return out;
}

std::vector<int> EigenvalueSupport::diagonal() const {
  std::vector<int> out;
  for (const auto& p : pairs_)
    if (p.first == p.second) out.push_back(p.first);
  return out;
}

bool EigenvalueSupport::contains(int r, int s) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), IndexPair{r, s});
}

bool EigenvalueSupport::empty_off_diagonal() const {
  return std::all_of(pairs_.begin(), pairs_.end(), [](const IndexPair& p) { return p.first == p.second; });
}

// --- blocks ----------------------------------------------------------------

CMatrix BlockDecomposition::reconstruct() const {
  CMatrix sum = CMatrix::Zero(order, order);
  for (const auto& [idx, block] : blocks) sum += block;
  return sum;
}

BlockDecomposition block_decompose(const DensityMatrix& p, const SpectralDecomposition& d, double block_tol) {
  if (p.order() != d.order())
    throw InvalidArgument("block_decompose: state has order " + std::to_string(p.order()) +
                          " but the decomposition has order " + std::to_string(d.order()));
  const CMatrix& m = p.matrix();
  BlockDecomposition b;
  b.order = d.order();
  b.theta = d.eigenvalues();
  b.block_tol = block_tol > 0.0 ? block_tol : 1e-9 * m.norm();

  std::vector<CMatrix> left;
  left.reserve(d.size());
  for (const auto& e : d.idempotents()) left.push_back(e * m);

  CMatrix dropped = CMatrix::Zero(b.order, b.order);
  std::vector<IndexPair> support;
  for (int r = 0; r < d.size(); ++r) {
    for (int s = 0; s < d.size(); ++s) {
      CMatrix block = left[r] * d.idempotents()[s];
      const double norm = block.norm();
      if (norm > b.block_tol / 10.0 && norm <= 10.0 * b.block_tol) {
        std::ostringstream msg;
        msg << "block (" << r << ", " << s << ") norm " << norm << " near block threshold " << b.block_tol;
        b.warnings.push_back(msg.str());
      }
      if (norm > b.block_tol) {
        support.emplace_back(r, s);
        b.blocks.emplace(IndexPair{r, s}, std::move(block));
      } else {
        dropped += block;
      }
    }
  }
  b.dropped_norm = dropped.norm();
  b.support = EigenvalueSupport(std::move(support));
  return b;
}

CMatrix evolve_matrix(const BlockDecomposition& b, double t) {
  CMatrix out = CMatrix::Zero(b.order, b.order);
  for (const auto& [idx, block] : b.blocks) {
    const double phase = t * (b.theta[idx.first] - b.theta[idx.second]);
    kernels::accumulate_scaled(std::polar(1.0, phase), flat(block), flat(out));
  }
  return out;
}

DensityMatrix evolve(const BlockDecomposition& b, double t) {
  return DensityMatrix::from_evolution(evolve_matrix(b, t), std::max(kDefaultStateTol, 10.0 * b.block_tol));
}

// --- flatness --------------------------------------------------------------

double flatness_defect(const CVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw InvalidArgument("flatness of the zero vector is undefined");
  const CVector unit = v / norm;
  return kernels::max_probability_defect(flat(unit), 1.0 / static_cast<double>(v.size()));
}

bool is_flat(const CVector& v, double tol) { return flatness_defect(v) <= tol; }

}  // namespace qwalk
