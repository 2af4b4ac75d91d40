#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "qwalk/state.hpp"

namespace qwalk {

struct RationalApprox {
  long long p = 0;
  long long q = 1;
  /// |x - p/q|
  double residual = 0.0;
};

/// Smallest-denominator continued-fraction convergent p/q of x with
/// q <= max_den and |q x - p| <= tol. Empty when none exists.
///
/// The test is on |q x - p| rather than |x - p/q|: for an irrational x every
/// convergent has |q x - p| of order 1/q, so a tolerance far below
/// 1/max_den separates rationals with small denominators from irrationals,
/// which the unscaled residual cannot do once max_den^2 * tol > 1.
std::optional<RationalApprox> rational_approx(double x, long long max_den, double tol);

struct SquarefreeSplit {
  std::uint64_t root = 1;  // a
  std::uint64_t core = 1;  // b, square-free
};

/// k = a^2 b with b square-free. k >= 1.
SquarefreeSplit squarefree_part(std::uint64_t k);

/// Every off-diagonal support difference theta_r - theta_s equals
/// m_{r,s} sqrt(delta).
struct RatioCertificate {
  long long delta = 1;
  std::map<IndexPair, long long> multipliers;  // both orders, antisymmetric
  double residual = 0.0;
  long long g = 1;  // gcd of |m_{r,s}|
};

/// A pair of support differences whose ratio is irrational (or could not be
/// shown rational).
struct RatioWitness {
  IndexPair first;
  IndexPair second;
  double ratio = 0.0;
  std::string reason;
};

enum class RatioStatus { certified, failed, inconclusive, stationary };

struct RatioOutcome {
  RatioStatus status = RatioStatus::inconclusive;
  std::optional<RatioCertificate> certificate;
  std::optional<RatioWitness> witness;
  /// Largest omega with every support difference an integer multiple of it,
  /// when the ratios are rational. Equal to sqrt(delta) * g for certificates.
  std::optional<double> fundamental;
  std::string diagnostics;
};

struct RatioOptions {
  long long max_den = kDefaultMaxDenominator;
  double ratio_tol = 1e-9;
  double cert_tol = 1e-7;
};

/// Ratio condition on the off-diagonal support.
///
/// The certificate route requires each squared difference to be within
/// cert_tol of an integer and all of them to share one square-free part;
/// that is exactly the integer-matrix, rational-state situation. Distinct
/// square-free parts prove an irrational ratio. When the squares are not
/// near-integers the ratios are tested with rational_approx: an irrational
/// ratio fails, otherwise the outcome is inconclusive and `fundamental`
/// carries the common frequency implied by the rational ratios.
RatioOutcome ratio_condition(const EigenvalueSupport& support, std::span<const double> theta,
                             const RatioOptions& options = {});

/// 2 pi / (sqrt(delta) g).
double minimum_period(const RatioCertificate& cert);

/// pi / (theta_1 - theta_m). Throws InvalidArgument for a single eigenvalue.
double pst_time_lower_bound(const SpectralDecomposition& d);

}  // namespace qwalk
