#include <deque>

#include "qwalk/error.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

namespace {

// Orthonormal basis of a subspace of n x n matrices under the trace inner
// product <X, Y> = tr(X* Y).
class MatrixBasis {
 public:
  // Adds the component of `x` orthogonal to the span; returns false when
  // that component is below rel_tol * |x|.
  bool extend(const CMatrix& x, double rel_tol, CMatrix& added) {
    const double scale = x.norm();
    if (scale == 0.0) return false;
    CMatrix residual = x;
    // Two Gram-Schmidt passes keep the basis orthonormal to working precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis_) residual -= q * inner(q, residual);
    const double norm = residual.norm();
    if (norm <= rel_tol * scale) return false;
    added = residual / norm;
    basis_.push_back(added);
    return true;
  }

  int size() const { return static_cast<int>(basis_.size()); }

 private:
  static cplx inner(const CMatrix& q, const CMatrix& x) { return q.conjugate().cwiseProduct(x).sum(); }

  std::vector<CMatrix> basis_;
};

}  // namespace

AlgebraDimension algebra_dimension(const CMatrix& h, const DensityMatrix& p, int cap, double tol) {
  const int n = static_cast<int>(h.rows());
  if (h.cols() != n || p.order() != n) throw InvalidArgument("algebra_dimension: dimension mismatch");
  const int full = n * n;
  if (cap <= 0) cap = 2 * full;
  if (cap < full) throw InvalidArgument("algebra_dimension: cap must be at least n^2");

  const CMatrix* generators[] = {&h, &p.matrix()};
  MatrixBasis basis;
  AlgebraDimension result;

  struct Word {
    CMatrix value;
    int length;
  };
  std::deque<Word> pending;
  CMatrix added;
  if (basis.extend(CMatrix::Identity(n, n), tol, added)) pending.push_back({added, 0});

  while (!pending.empty() && basis.size() < full) {
    Word w = std::move(pending.front());
    pending.pop_front();
    if (w.length >= cap) continue;
    for (const CMatrix* g : generators) {
      if (basis.extend((*g) * w.value, tol, added)) {
        pending.push_back({added, w.length + 1});
        result.word_length = std::max(result.word_length, w.length + 1);
        if (basis.size() == full) break;
      }
    }
  }
  result.dim = basis.size();
  result.controllable = result.dim == full;
  return result;
}

}  // namespace qwalk
