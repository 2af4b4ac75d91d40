#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qwalk/arithmetic.hpp"
#include "qwalk/error.hpp"

namespace qwalk {

std::optional<RationalApprox> rational_approx(double x, long long max_den, double tol) {
  if (max_den < 1) throw InvalidArgument("rational_approx: max_den must be at least 1");
  if (!std::isfinite(x) || std::abs(x) > 1e15) return std::nullopt;

  // Convergents h/k from the recurrences h_n = a_n h_{n-1} + h_{n-2}.
  long double h_prev = 1, h_prev2 = 0;
  long double k_prev = 0, k_prev2 = 1;
  long double y = x;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a = std::floor(y);
    const long double h = a * h_prev + h_prev2;
    const long double k = a * k_prev + k_prev2;
    if (k > static_cast<long double>(max_den)) break;
    const auto p = static_cast<long long>(h);
    const auto q = static_cast<long long>(k);
    if (std::abs(static_cast<double>(q) * x - static_cast<double>(p)) <= tol)
      return RationalApprox{p, q, std::abs(x - static_cast<double>(p) / static_cast<double>(q))};
    const long double frac = y - a;
    if (frac < 1e-18L) break;
    y = 1.0L / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

SquarefreeSplit squarefree_part(std::uint64_t k) {
  if (k == 0) throw InvalidArgument("squarefree_part: k must be positive");
  SquarefreeSplit out;
  std::uint64_t rest = k;
  for (std::uint64_t p = 2; p <= rest / p; p += (p == 2 ? 1 : 2)) {
    int exponent = 0;
    while (rest % p == 0) {
      rest /= p;
      ++exponent;
    }
    for (int i = 0; i < exponent / 2; ++i) out.root *= p;
    if (exponent % 2 == 1) out.core *= p;
  }
  out.core *= rest;
  return out;
}

namespace {

struct Difference {
  IndexPair pair;
  double value;
};

std::string pair_text(const IndexPair& p) {
  return "(" + std::to_string(p.first) + ", " + std::to_string(p.second) + ")";
}

// Certificate route: every squared difference near an integer.
std::optional<RatioOutcome> try_certificate(const std::vector<Difference>& diffs, const RatioOptions& opt) {
  std::vector<SquarefreeSplit> splits;
  for (const auto& d : diffs) {
    const double sq = d.value * d.value;
    const double k = std::round(sq);
    const double miss = std::abs(sq - k);
    const double allowed = opt.cert_tol * std::max(1.0, sq);
    if (k < 1.0 || k > 9.2e18 || miss > allowed) {
      if (k >= 1.0 && miss <= 10.0 * allowed) {
        RatioOutcome near;
        near.status = RatioStatus::inconclusive;
        near.diagnostics = "squared difference for " + pair_text(d.pair) + " misses an integer by " +
                           std::to_string(miss) + ", within 10x of cert_tol";
        return near;
      }
      return std::nullopt;
    }
    splits.push_back(squarefree_part(static_cast<std::uint64_t>(k)));
  }

  for (std::size_t i = 1; i < diffs.size(); ++i) {
    if (splits[i].core != splits[0].core) {
      RatioOutcome failed;
      failed.status = RatioStatus::failed;
      failed.witness = RatioWitness{diffs[i].pair, diffs[0].pair, diffs[i].value / diffs[0].value,
                                    "differences are integer multiples of sqrt(" + std::to_string(splits[i].core) +
                                        ") and sqrt(" + std::to_string(splits[0].core) + "); their ratio is irrational"};
      failed.diagnostics = failed.witness->reason;
      return failed;
    }
  }

  RatioCertificate cert;
  cert.delta = static_cast<long long>(splits[0].core);
  const double root = std::sqrt(static_cast<double>(cert.delta));
  long long g = 0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    const auto m = static_cast<long long>(splits[i].root);
    cert.multipliers[diffs[i].pair] = m;
    cert.multipliers[{diffs[i].pair.second, diffs[i].pair.first}] = -m;
    cert.residual = std::max(cert.residual, std::abs(diffs[i].value - static_cast<double>(m) * root));
    g = std::gcd(g, m);
  }
  cert.g = g;

  RatioOutcome out;
  if (cert.residual <= opt.cert_tol) {
    out.status = RatioStatus::certified;
    out.fundamental = root * static_cast<double>(g);
  } else {
    out.status = RatioStatus::inconclusive;
    out.diagnostics = "certificate residual " + std::to_string(cert.residual) + " exceeds cert_tol";
  }
  out.certificate = cert;
  return out;
}

}  // namespace

RatioOutcome ratio_condition(const EigenvalueSupport& support, std::span<const double> theta,
                             const RatioOptions& options) {
  std::vector<Difference> diffs;
  for (const auto& p : support.upper()) {
    if (p.second >= static_cast<int>(theta.size())) throw InvalidArgument("ratio_condition: support index out of range");
    diffs.push_back({p, theta[p.first] - theta[p.second]});
  }
  if (diffs.empty()) {
    RatioOutcome out;
    out.status = RatioStatus::stationary;
    out.diagnostics = "off-diagonal support is empty";
    return out;
  }

  if (auto cert = try_certificate(diffs, options)) return *cert;

  // Ratio route against the first difference.
  const double base = diffs[0].value;
  long long lcm = 1;
  bool lcm_overflow = false;
  std::vector<RationalApprox> ratios;
  for (const auto& d : diffs) {
    const auto approx = rational_approx(d.value / base, options.max_den, options.ratio_tol);
    if (!approx) {
      RatioOutcome failed;
      failed.status = RatioStatus::failed;
      std::ostringstream reason;
      reason.precision(17);
      reason << "ratio " << d.value / base << " has no rational approximation with denominator <= " << options.max_den;
      failed.witness = RatioWitness{d.pair, diffs[0].pair, d.value / base, reason.str()};
      failed.diagnostics = reason.str();
      return failed;
    }
    ratios.push_back(*approx);
    if (!lcm_overflow) lcm_overflow = __builtin_mul_overflow(lcm / std::gcd(lcm, approx->q), approx->q, &lcm);
  }

  RatioOutcome out;
  out.status = RatioStatus::inconclusive;
  out.diagnostics = "support ratios are rational but squared differences are not near-integers";
  if (!lcm_overflow && lcm <= 1'000'000'000'000'000LL) {
    const long long l = lcm;
    long long g = 0;
    for (const auto& r : ratios) g = std::gcd(g, std::abs(r.p) * (l / r.q));
    out.fundamental = base / static_cast<double>(l) * static_cast<double>(g);
  }
  return out;
}

double minimum_period(const RatioCertificate& cert) {
  if (cert.delta < 1 || cert.g < 1) throw InvalidArgument("minimum_period: invalid certificate");
  return 2.0 * std::numbers::pi / (std::sqrt(static_cast<double>(cert.delta)) * static_cast<double>(cert.g));
}

double pst_time_lower_bound(const SpectralDecomposition& d) {
  if (d.size() < 2) throw InvalidArgument("pst_time_lower_bound: needs at least two distinct eigenvalues");
  return std::numbers::pi / (d.eigenvalues().front() - d.eigenvalues().back());
}

}  // namespace qwalk
