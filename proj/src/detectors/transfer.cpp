#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qwalk/detectors.hpp"
#include "qwalk/error.hpp"
#include "qwalk/kernels.hpp"

namespace qwalk {

namespace {

double distance(const CMatrix& a, const CMatrix& b) { return std::sqrt(kernels::distance_sq(flat(a), flat(b))); }

double imag_norm(const CMatrix& a) { return std::sqrt(kernels::imag_norm_sq(flat(a))); }

void add_spectral_warnings(DetectionReport& report, const SpectralDecomposition& d) {
  report.warnings.insert(report.warnings.end(), d.warnings().begin(), d.warnings().end());
}

std::optional<int> matching_vertex(const CMatrix& q, double tol) {
  for (int b = 0; b < q.rows(); ++b) {
    CMatrix vertex = CMatrix::Zero(q.rows(), q.cols());
    vertex(b, b) = 1.0;
    if (distance(q, vertex) <= tol) return b;
  }
  return std::nullopt;
}

// Spectral Lipschitz bound for t -> |U(t) P U(-t) - Q|_F.
double lipschitz(const SpectralDecomposition& d) { return 2.0 * std::max(1.0, d.norm()); }

}  // namespace

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::inconclusive:
      break;
  }
  return "inconclusive";
}

DetectionReport detect_periodicity(const DensityMatrix& p, const SpectralDecomposition& d, const DetectorOptions& opt) {
  DetectionReport report;
  add_spectral_warnings(report, d);
  if (d.ambiguous()) {
    report.reason = "ambiguous eigenvalue grouping";
    return report;
  }

  const BlockDecomposition blocks = block_decompose(p, d, opt.block_tol);
  report.warnings.insert(report.warnings.end(), blocks.warnings.begin(), blocks.warnings.end());
  const RatioOutcome outcome = ratio_condition(blocks.support, d.eigenvalues(), opt.ratio);

  auto confirm = [&](double sigma) {
    report.residual = distance(evolve_matrix(blocks, sigma), p.matrix());
    report.witness_time = sigma;
    report.verdict = report.residual <= opt.accept_tol ? Verdict::yes : Verdict::inconclusive;
    if (report.verdict == Verdict::inconclusive) {
      std::ostringstream msg;
      msg << "evolution through the predicted period leaves residual " << report.residual;
      report.reason = msg.str();
    }
  };

  switch (outcome.status) {
    case RatioStatus::stationary:
      report.verdict = Verdict::yes;
      report.witness_time = 0.0;
      report.residual = distance(evolve_matrix(blocks, 1.0), p.matrix());
      report.reason = "stationary: the state commutes with H, so every t is a period";
      if (report.residual > opt.accept_tol) report.verdict = Verdict::inconclusive;
      return report;
    case RatioStatus::failed:
      report.verdict = Verdict::no;
      report.witness = outcome.witness;
      report.reason = "ratio condition fails: " + outcome.diagnostics;
      return report;
    case RatioStatus::certified:
      report.certificate = outcome.certificate;
      confirm(minimum_period(*outcome.certificate));
      if (report.verdict == Verdict::yes) report.reason = "ratio condition certified; minimum period 2 pi / (sqrt(delta) g)";
      return report;
    case RatioStatus::inconclusive:
      break;
  }

  report.certificate = outcome.certificate;
  if (outcome.fundamental && !p.is_rational()) {
    confirm(2.0 * std::numbers::pi / *outcome.fundamental);
    if (report.verdict == Verdict::yes) {
      report.reason = "support ratios rational; period from the common frequency of the differences";
      report.warnings.push_back("non-rational state: no square-free certificate, period from rational ratios");
    }
    return report;
  }
  report.reason = "ratio condition inconclusive: " + outcome.diagnostics;
  return report;
}

DetectionReport detect_pst(const DensityMatrix& p, const SpectralDecomposition& d, const DetectorOptions& opt) {
  DetectionReport period = detect_periodicity(p, d, opt);
  DetectionReport report;
  report.warnings = period.warnings;
  report.certificate = period.certificate;
  report.witness = period.witness;

  if (!p.is_real()) {
    report.reason = "transfer detection needs a real initial state";
    return report;
  }
  const bool periodic = period.verdict == Verdict::yes;
  if (periodic && *period.witness_time == 0.0) {
    report.verdict = Verdict::no;
    report.reason = "stationary state: U(t) P U(-t) = P for all t";
    return report;
  }
  const BlockDecomposition blocks = block_decompose(p, d, opt.block_tol);

  if (d.real_source()) {
    if (period.verdict == Verdict::inconclusive) {
      report.reason = "periodicity inconclusive: " + period.reason;
      return report;
    }
    if (!periodic) {
      report.verdict = Verdict::no;
      report.reason = "state is not periodic, so no transfer to a real state exists (" + period.reason + ")";
      return report;
    }
    const double tau = *period.witness_time / 2.0;
    const CMatrix q = evolve_matrix(blocks, tau);
    report.residual = imag_norm(q);
    const double moved = distance(q, p.matrix());
    if (report.residual <= opt.accept_tol && moved > opt.accept_tol) {
      report.verdict = Verdict::yes;
      report.witness_time = tau;
      CMatrix real_q = q.real().cast<cplx>();
      report.target_vertex = matching_vertex(real_q, opt.accept_tol);
      report.target = DensityMatrix::from_evolution(std::move(real_q));
      report.reason = "U(sigma/2) P U(-sigma/2) is real and differs from P";
    } else {
      report.verdict = Verdict::no;
      std::ostringstream msg;
      msg << "state at sigma/2 is not a distinct real state (imaginary norm " << report.residual << ", distance "
          << moved << ")";
      report.reason = msg.str();
    }
    return report;
  }

  // Oriented source: every U(t) P U(-t) is real, so periodicity is not a
  // prerequisite. Search vertex targets over one period when there is one,
  // otherwise over [0, t_max].
  const int n = p.order();
  std::vector<CMatrix> targets;
  for (int b = 0; b < n; ++b) {
    CMatrix vertex = CMatrix::Zero(n, n);
    vertex(b, b) = 1.0;
    if (distance(vertex, p.matrix()) <= opt.accept_tol) continue;
    targets.push_back(std::move(vertex));
  }
  auto objective = [&](double t) {
    const CMatrix state = evolve_matrix(blocks, t);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& vertex : targets) best = std::min(best, distance(state, vertex));
    return best;
  };
  const double horizon = periodic ? *period.witness_time : opt.t_max;
  report.t_max = horizon;
  if (targets.empty()) {
    report.verdict = Verdict::no;
    report.reason = "no vertex state distinct from the initial state";
    return report;
  }
  const double step = std::min(1e-2, horizon / 2000.0);
  const auto minima = search_minima(objective, step, horizon, step, lipschitz(d) * step + opt.accept_tol);
  TimeMinimum best{horizon, std::numeric_limits<double>::infinity()};
  for (const auto& m : minima)
    if (m.value <= opt.accept_tol && m.t < best.t) best = m;
  if (best.value <= opt.accept_tol) {
    report.verdict = Verdict::yes;
    report.witness_time = best.t;
    report.residual = best.value;
    const CMatrix q = evolve_matrix(blocks, best.t);
    report.target_vertex = matching_vertex(q, 10.0 * opt.accept_tol);
    report.target = DensityMatrix::from_evolution(q);
    report.reason = periodic ? "oriented walk reaches a vertex state within one period"
                             : "oriented walk reaches a vertex state before t_max";
  } else {
    report.residual = std::numeric_limits<double>::infinity();
    for (const auto& m : minima) report.residual = std::min(report.residual, m.value);
    report.verdict = Verdict::no;
    report.reason = periodic ? "oriented walk reaches no vertex state within one period (vertex targets only)"
                             : "oriented walk reaches no vertex state on [0, t_max] (vertex targets only)";
  }
  return report;
}

double verify_transfer(const DensityMatrix& p, const DensityMatrix& q, const SpectralDecomposition& d, double t) {
  if (p.order() != d.order() || q.order() != d.order()) throw InvalidArgument("verify_transfer: dimension mismatch");
  const CMatrix u = transition_matrix(d, t);
  const CMatrix moved = u * p.matrix() * u.adjoint();
  return distance(moved, q.matrix());
}

PhaseCheck controllability_phase_check(const DensityMatrix& p, const SpectralDecomposition& d, double t, double tol) {
  PhaseCheck check;
  const AlgebraDimension alg = algebra_dimension(d.source(), p);
  const BlockDecomposition blocks = block_decompose(p, d);
  const bool real_image = imag_norm(evolve_matrix(blocks, t)) <= tol;
  check.preconditions_met = alg.controllable && real_image;

  const int n = d.order();
  const CMatrix u2 = transition_matrix(d, 2.0 * t);
  check.zeta = u2.trace() / static_cast<double>(n);
  check.scalar_residual = (u2 - check.zeta * CMatrix::Identity(n, n)).norm();
  check.scalar = check.scalar_residual <= static_cast<double>(n) * tol;
  check.root_residual = std::abs(std::pow(check.zeta, n) - cplx(1.0, 0.0));
  return check;
}

}  // namespace qwalk
