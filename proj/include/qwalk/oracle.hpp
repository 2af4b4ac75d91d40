#pragma once

// Brute-force verification path. Everything here goes through dense_expm and
// plain time grids; nothing calls the spectral decomposition.

#include <functional>
#include <vector>

#include "qwalk/linalg.hpp"

namespace qwalk::oracle {

/// Padé-13 scaling and squaring. Throws InvalidArgument for non-finite
/// entries or a 1-norm above 1e4.
CMatrix dense_expm(const CMatrix& m);

/// exp(i t H).
CMatrix walk_matrix(const CMatrix& h, double t);

struct Window {
  double t0 = 0.0;
  double t1 = 20.0;
};

struct ScanMinimum {
  double t = 0.0;
  double value = 0.0;
};

struct ScanResult {
  double grid_step = 0.0;
  /// Refined local minima with value <= the recording threshold, by t.
  std::vector<ScanMinimum> minima;
  /// Smallest value seen on (t0, t1].
  double floor = 0.0;
  double floor_t = 0.0;
};

inline constexpr double kDefaultScanStep = 1e-3;
inline constexpr double kDefaultRecordBelow = 1e-7;

/// Objective evaluated on U(t). `lipschitz` bounds its time derivative and
/// decides which grid minima are worth refining.
struct Objective {
  std::function<double(const CMatrix& u)> f;
  double lipschitz = 0.0;
};

/// One pass of U(t) over the grid for several objectives at once. Grid
/// values come from stepping U(t + h) = U(t) U(h), re-anchored through
/// dense_expm; refinement evaluates dense_expm directly.
std::vector<ScanResult> scan_objectives(const CMatrix& h, Window window, double step,
                                        const std::vector<Objective>& objectives,
                                        double record_below = kDefaultRecordBelow);

/// |P(t) - P|_F
ScanResult scan_return(const CMatrix& p, const CMatrix& h, Window window, double step = kDefaultScanStep,
                       double record_below = kDefaultRecordBelow);
/// |P(t) - Q|_F
ScanResult scan_transfer(const CMatrix& p, const CMatrix& q, const CMatrix& h, Window window,
                         double step = kDefaultScanStep, double record_below = kDefaultRecordBelow);
/// max_j | |U(t) e_a|_j^2 - 1/n |
ScanResult scan_flatness(const CMatrix& h, int a, Window window, double step = kDefaultScanStep,
                         double record_below = kDefaultRecordBelow);

/// Objective factories shared with the corpus tests.
Objective return_objective(const CMatrix& p, const CMatrix& h);
Objective transfer_objective(const CMatrix& p, const CMatrix& q, const CMatrix& h);
/// |Im P(t)|_F
Objective imaginary_objective(const CMatrix& p, const CMatrix& h);
Objective flatness_objective(const CMatrix& h, int a);
/// Joint flatness over all columns.
Objective uniform_flatness_objective(const CMatrix& h);

}  // namespace qwalk::oracle
