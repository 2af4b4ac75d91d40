#pragma once

#include <span>
#include <string>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/linalg.hpp"

namespace qwalk {

inline constexpr double kDefaultSpectralTol = 1e-9;
inline constexpr int kDefaultMaxOrder = 512;

/// Distinct eigenvalues of a Hermitian matrix, strictly decreasing, with the
/// orthogonal projections onto their eigenspaces.
///
/// Two raw eigenvalues share a group iff their gap is at most
/// tol * max(1, |H|). Gaps within a factor 10 of that threshold are recorded
/// as warnings; `ambiguous()` then reports true and detectors downgrade
/// their verdicts to inconclusive.
class SpectralDecomposition {
 public:
  int order() const noexcept { return static_cast<int>(source_.rows()); }
  int size() const noexcept { return static_cast<int>(theta_.size()); }

  const std::vector<double>& eigenvalues() const noexcept { return theta_; }
  const std::vector<CMatrix>& idempotents() const noexcept { return idempotents_; }
  const std::vector<int>& multiplicities() const noexcept { return mult_; }
  const CMatrix& source() const noexcept { return source_; }

  double tolerance() const noexcept { return tol_; }
  /// Absolute grouping threshold actually applied: tol * max(1, |H|).
  double grouping_threshold() const noexcept { return threshold_; }
  /// Spectral norm of the source.
  double norm() const noexcept { return norm_; }
  /// True when the source has no imaginary part (graph case). False for
  /// -iS of an oriented graph.
  bool real_source() const noexcept { return real_source_; }

  bool ambiguous() const noexcept { return !warnings_.empty(); }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Index of the group containing `value`, or -1.
  int index_of(double value) const noexcept;

 private:
  friend SpectralDecomposition spectral_decompose(const CMatrix& h, double tol, int max_order);

  std::vector<double> theta_;
  std::vector<CMatrix> idempotents_;
  std::vector<int> mult_;
  CMatrix source_;
  double tol_ = kDefaultSpectralTol;
  double threshold_ = kDefaultSpectralTol;
  double norm_ = 0.0;
  bool real_source_ = true;
  std::vector<std::string> warnings_;
};

/// Throws InvalidArgument when `h` is not square, not Hermitian within tol,
/// or larger than `max_order`; NumericalError when the eigensolver fails.
SpectralDecomposition spectral_decompose(const CMatrix& h, double tol = kDefaultSpectralTol,
                                         int max_order = kDefaultMaxOrder);

/// Adjacency matrix as a complex Hermitian matrix.
CMatrix hermitian_matrix(const Graph& x);
/// -iS, the Hermitian matrix whose walk is exp(tS).
CMatrix hermitian_matrix(const OrientedGraph& x);

/// U(t) = sum_r exp(i t theta_r) E_r.
CMatrix transition_matrix(const SpectralDecomposition& d, double t);

/// Columns E_r e_a, one per eigenvalue group.
std::vector<CVector> vertex_components(const SpectralDecomposition& d, int a);

struct VertexRelation {
  enum class Kind { unrelated, cospectral, strongly_cospectral };
  Kind kind = Kind::unrelated;
  /// sigma_r with E_r e_a = sigma_r E_r e_b, ordered by decreasing theta.
  /// Groups where E_r e_a vanishes get +1. Filled only when strongly cospectral.
  std::vector<int> signs;
};

VertexRelation vertex_spectral_relation(const SpectralDecomposition& d, int a, int b, double tol = 1e-8);

/// Cauchy interlacing of the principal submatrix on `subset` against `h`.
/// `subset` must be nonempty and proper.
bool interlacing_check(const CMatrix& h, std::span<const int> subset, double tol = 1e-9);

}  // namespace qwalk
