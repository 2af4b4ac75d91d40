#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/arithmetic.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

enum class Verdict { yes, no, inconclusive };

std::string_view verdict_name(Verdict v) noexcept;

struct DetectorOptions {
  double accept_tol = 1e-8;  // Frobenius
  double flat_tol = 1e-9;    // per-entry probability defect
  double t_max = 20.0;
  /// Grid step for time searches; <= 0 picks t_max / 1e5.
  double grid_step = 0.0;
  /// <= 0 selects 1e-9 |P|.
  double block_tol = 0.0;
  RatioOptions ratio;
  /// Sign-pattern enumeration cap: at most 2^pgst_cap patterns.
  int pgst_cap = 20;
};

/// Necessary-condition field of the mixing detectors.
struct RatioConditionNote {
  RatioStatus status = RatioStatus::inconclusive;
  /// True when a failed ratio condition rules mixing out (oriented graphs).
  bool binding = false;
};

struct DetectionReport {
  Verdict verdict = Verdict::inconclusive;
  /// sigma (periodicity), tau (transfer) or the mixing time.
  std::optional<double> witness_time;
  std::optional<DensityMatrix> target;
  /// Set when the target is a vertex state.
  std::optional<int> target_vertex;
  double residual = 0.0;
  std::optional<RatioCertificate> certificate;
  std::optional<RatioWitness> witness;
  std::optional<RatioConditionNote> necessary_condition;
  /// Search horizon for semi-decisions; a "no" only covers [0, t_max].
  std::optional<double> t_max;
  std::string reason;
  std::vector<std::string> warnings;
};

/// Minimum period of a real state via the ratio condition, confirmed by
/// evolving the state through one period.
DetectionReport detect_periodicity(const DensityMatrix& p, const SpectralDecomposition& d,
                                   const DetectorOptions& opt = {});

/// Perfect state transfer from a real state.
///
/// For real symmetric sources a transfer between real states can only
/// happen at half the minimum period, and the target is unique; the target
/// is evolve(P, sigma/2). For oriented graphs U(t) is real for every t, so
/// that argument does not apply; the search is restricted to vertex-state
/// targets over one period when the state is periodic, else over [0, t_max].
DetectionReport detect_pst(const DensityMatrix& p, const SpectralDecomposition& d, const DetectorOptions& opt = {});

/// |U(t) P U(-t) - Q|_F
double verify_transfer(const DensityMatrix& p, const DensityMatrix& q, const SpectralDecomposition& d, double t);

/// eps over unordered off-diagonal support pairs (r < s).
struct SignPattern {
  std::map<IndexPair, int> eps;
};

struct PgstCandidate {
  SignPattern signs;
  DensityMatrix state;
};

struct PgstEnumeration {
  /// False when the enumeration cap was exceeded; candidates is then empty.
  bool complete = true;
  std::uint64_t pattern_count = 1;
  std::vector<PgstCandidate> candidates;
};

/// Real states Q = sum_r E_r P E_r + sum eps E_r P E_s that survive the
/// positive-semidefinite filter. Always contains P itself (eps = +1).
PgstEnumeration pgst_candidates(const DensityMatrix& p, const BlockDecomposition& b, const SpectralDecomposition& d,
                                const DetectorOptions& opt = {});

struct WitnessSearch {
  double t = 0.0;
  double residual = 0.0;
};

/// Best approach of U(t) P U(-t) to Q over (0, t_max]: grid scan plus
/// golden-section refinement. step <= 0 picks min(1e-2, t_max / 2000).
WitnessSearch pgst_witness_search(const DensityMatrix& p, const DensityMatrix& q, const SpectralDecomposition& d,
                                  double t_max, double accept_tol = 1e-8, double step = 0.0);

DetectionReport detect_local_uniform_mixing(const SpectralDecomposition& d, int a, const DetectorOptions& opt = {});
DetectionReport detect_uniform_mixing(const SpectralDecomposition& d, const DetectorOptions& opt = {});

struct VertexBounds {
  int ecc_plus_one = 0;
  int support_size = 0;
  int max_valency = 0;
  /// 2 * max_valency + 1
  int upper = 0;
  bool periodic = false;
  /// The eccentricity bound needs walks without sign cancellation: always
  /// true for graphs, and for oriented graphs only when every arc runs from
  /// one side of a bipartition to the other (a natural orientation or its
  /// reverse).
  bool ecc_bound_applies = true;
  /// ecc + 1 <= |esupp| where it applies, and |esupp| <= upper for periodic
  /// vertices.
  bool consistent = false;
};

/// Throws InvalidArgument for disconnected inputs.
VertexBounds periodic_vertex_bounds(const Graph& x, const SpectralDecomposition& d, int a,
                                    const DetectorOptions& opt = {});
VertexBounds periodic_vertex_bounds(const OrientedGraph& x, const SpectralDecomposition& d, int a,
                                    const DetectorOptions& opt = {});

struct PhaseCheck {
  bool scalar = false;
  cplx zeta{1.0, 0.0};
  /// |U(2t) - zeta I|_F
  double scalar_residual = 0.0;
  /// |zeta^n - 1|
  double root_residual = 0.0;
  /// P controllable and evolve(P, t) real.
  bool preconditions_met = false;
};

PhaseCheck controllability_phase_check(const DensityMatrix& p, const SpectralDecomposition& d, double t,
                                       double tol = 1e-8);

// --- time search shared by the detectors -----------------------------------

struct TimeMinimum {
  double t = 0.0;
  double value = 0.0;
};

/// Grid scan of f on [t0, t1] with golden-section refinement of the grid
/// minima whose value is at most `refine_below`, plus the global grid
/// minimum. Returns refined minima sorted by t.
std::vector<TimeMinimum> search_minima(const std::function<double(double)>& f, double t0, double t1, double step,
                                       double refine_below);

}  // namespace qwalk
