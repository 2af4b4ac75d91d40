#include <cmath>
#include <limits>
#include <sstream>

#include "qwalk/detectors.hpp"
#include "qwalk/error.hpp"
#include "qwalk/kernels.hpp"

namespace qwalk {

namespace {

double grid_step(const DetectorOptions& opt) { return opt.grid_step > 0.0 ? opt.grid_step : opt.t_max / 1e5; }

RatioConditionNote necessary_condition(const SpectralDecomposition& d, int a, const DetectorOptions& opt) {
  const BlockDecomposition blocks = block_decompose(vertex_state(d.order(), a), d, opt.block_tol);
  RatioConditionNote note;
  note.status = ratio_condition(blocks.support, d.eigenvalues(), opt.ratio).status;
  note.binding = !d.real_source();
  return note;
}

// Shared tail of both mixing detectors: scan the defect, take the earliest
// refined minimum under flat_tol.
void scan_flatness(DetectionReport& report, const SpectralDecomposition& d, const DetectorOptions& opt,
                   const std::function<double(double)>& defect) {
  if (!(opt.t_max > 0.0)) throw InvalidArgument("mixing: t_max must be positive");
  report.warnings.insert(report.warnings.end(), d.warnings().begin(), d.warnings().end());
  report.t_max = opt.t_max;
  const double step = std::min(grid_step(opt), opt.t_max);
  const double slope = 2.0 * std::max(1.0, d.norm());
  const auto minima = search_minima(defect, 0.0, opt.t_max, step, slope * step + opt.flat_tol);

  double floor = std::numeric_limits<double>::infinity();
  std::optional<TimeMinimum> first;
  for (const auto& m : minima) {
    floor = std::min(floor, m.value);
    if (!first && m.value <= opt.flat_tol) first = m;
  }
  if (first) {
    report.verdict = Verdict::yes;
    report.witness_time = first->t;
    report.residual = first->value;
    report.reason = "flatness defect below flat_tol";
  } else {
    report.verdict = Verdict::no;
    report.residual = floor;
    std::ostringstream msg;
    msg << "flatness defect floor " << floor << " exceeds flat_tol on [0, " << opt.t_max << "]";
    report.reason = msg.str();
  }
  if (d.ambiguous()) {
    report.verdict = Verdict::inconclusive;
    report.reason = "ambiguous eigenvalue grouping; " + report.reason;
  }
}

void apply_binding(DetectionReport& report) {
  const auto& note = *report.necessary_condition;
  if (!note.binding || note.status != RatioStatus::failed) return;
  if (report.verdict == Verdict::yes) {
    report.verdict = Verdict::inconclusive;
    report.warnings.push_back("numerical flatness contradicts the failed ratio condition on an oriented graph");
  } else if (report.verdict == Verdict::no) {
    report.reason += "; ratio condition fails, which rules mixing out for oriented graphs";
  }
}

}  // namespace

DetectionReport detect_local_uniform_mixing(const SpectralDecomposition& d, int a, const DetectorOptions& opt) {
  const int n = d.order();
  if (a < 0 || a >= n) throw InvalidArgument("detect_local_uniform_mixing: vertex out of range");

  DetectionReport report;
  report.necessary_condition = necessary_condition(d, a, opt);

  const std::vector<CVector> comps = vertex_components(d, a);
  const auto& theta = d.eigenvalues();
  const double target = 1.0 / static_cast<double>(n);
  CVector u(n);
  auto defect = [&](double t) {
    u.setZero();
    for (std::size_t r = 0; r < comps.size(); ++r)
      kernels::accumulate_scaled(std::polar(1.0, t * theta[r]), flat(comps[r]), flat(u));
    return kernels::max_probability_defect(flat(u), target);
  };
  scan_flatness(report, d, opt, defect);
  apply_binding(report);
  return report;
}

DetectionReport detect_uniform_mixing(const SpectralDecomposition& d, const DetectorOptions& opt) {
  const int n = d.order();
  DetectionReport report;
  // Worst status over all vertices: failed > inconclusive > certified > stationary.
  auto rank = [](RatioStatus s) {
    switch (s) {
      case RatioStatus::failed:
        return 3;
      case RatioStatus::inconclusive:
        return 2;
      case RatioStatus::certified:
        return 1;
      case RatioStatus::stationary:
        break;
    }
    return 0;
  };
  RatioConditionNote note{RatioStatus::stationary, !d.real_source()};
  for (int a = 0; a < n; ++a) {
    const RatioStatus s = necessary_condition(d, a, opt).status;
    if (rank(s) > rank(note.status)) note.status = s;
  }
  report.necessary_condition = note;

  const double target = 1.0 / static_cast<double>(n);
  auto defect = [&](double t) {
    const CMatrix u = transition_matrix(d, t);
    return kernels::max_probability_defect(flat(u), target);
  };
  scan_flatness(report, d, opt, defect);
  apply_binding(report);
  return report;
}

}  // namespace qwalk
