#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/linalg.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

inline constexpr double kDefaultStateTol = 1e-9;
inline constexpr long long kDefaultMaxDenominator = 1'000'000;

/// Hermitian, positive semidefinite, trace-one matrix together with its
/// realness / purity / rationality classification.
class DensityMatrix {
 public:
  /// Validates the density invariants. Throws InvalidArgument with the name
  /// of the violated invariant.
  static DensityMatrix from_matrix(CMatrix m, double tol = kDefaultStateTol,
                                   long long max_den = kDefaultMaxDenominator);

  /// Skips the positive-semidefinite eigenvalue test; used for states that
  /// are unitary images of validated states. Trace and Hermiticity are still
  /// enforced.
  static DensityMatrix from_evolution(CMatrix m, double tol = kDefaultStateTol,
                                      long long max_den = kDefaultMaxDenominator);

  const CMatrix& matrix() const noexcept { return m_; }
  int order() const noexcept { return static_cast<int>(m_.rows()); }

  bool is_real() const noexcept { return real_; }
  bool is_pure() const noexcept { return pure_; }
  bool is_rational() const noexcept { return rational_; }

 private:
  DensityMatrix(CMatrix m, double tol, long long max_den);

  CMatrix m_;
  bool real_ = false;
  bool pure_ = false;
  bool rational_ = false;
};

/// Named invariant checks on an arbitrary matrix, for reporting.
struct DensityCheck {
  double hermitian_residual = 0.0;  // |M - M*|
  double trace_residual = 0.0;      // |tr M - 1|
  double min_eigenvalue = 0.0;
  /// Names of the failed invariants: "hermitian", "trace", "psd".
  std::vector<std::string> failures;
};
DensityCheck check_density(const CMatrix& m, double tol = kDefaultStateTol);

/// e_a e_a^T
DensityMatrix vertex_state(int n, int a);

/// z z*; z must be a unit vector within tol.
DensityMatrix pure_state(const CVector& z, double tol = kDefaultStateTol);

using IndexPair = std::pair<int, int>;

/// Pairs (r, s) of eigenvalue indices with E_r P E_s nonzero.
class EigenvalueSupport {
 public:
  EigenvalueSupport() = default;
  explicit EigenvalueSupport(std::vector<IndexPair> pairs);

  const std::vector<IndexPair>& pairs() const noexcept { return pairs_; }
  /// Pairs with r != s, both orders.
  std::vector<IndexPair> off_diagonal() const;
  /// Pairs with r < s.
  std::vector<IndexPair> upper() const;
  /// Indices r with (r, r) in the support.
  std::vector<int> diagonal() const;
  bool contains(int r, int s) const;
  bool empty_off_diagonal() const;

 private:
  std::vector<IndexPair> pairs_;  // sorted
};

/// The blocks E_r M E_s of a state with norm above block_tol.
struct BlockDecomposition {
  std::map<IndexPair, CMatrix> blocks;
  EigenvalueSupport support;
  std::vector<double> theta;
  int order = 0;
  double block_tol = 0.0;
  /// Frobenius norm of the sum of the dropped blocks.
  double dropped_norm = 0.0;
  /// Block norms within a factor 10 of block_tol.
  std::vector<std::string> warnings;

  CMatrix reconstruct() const;
};

/// block_tol <= 0 selects the default 1e-9 * |P|.
BlockDecomposition block_decompose(const DensityMatrix& p, const SpectralDecomposition& d, double block_tol = 0.0);

/// sum_{(r,s)} exp(i t (theta_r - theta_s)) E_r P E_s, as a raw matrix.
CMatrix evolve_matrix(const BlockDecomposition& b, double t);

DensityMatrix evolve(const BlockDecomposition& b, double t);

/// max_j | |v_j|^2 - 1/n | for v normalized to unit length.
double flatness_defect(const CVector& v);

/// Throws InvalidArgument for the zero vector.
bool is_flat(const CVector& v, double tol = kDefaultStateTol);

struct AlgebraDimension {
  int dim = 0;
  bool controllable = false;
  /// Longest word length that contributed a new basis element.
  int word_length = 0;
};

/// Dimension of the algebra generated by H and the state, by greedy basis
/// extension under left multiplication. cap <= 0 selects 2 n^2 for the word
/// length cap; otherwise cap must be at least n^2.
AlgebraDimension algebra_dimension(const CMatrix& h, const DensityMatrix& p, int cap = 0, double tol = 1e-9);

}  // namespace qwalk
