#include <algorithm>
#include <cmath>
#include <limits>

#include "qwalk/error.hpp"
#include "qwalk/kernels.hpp"
#include "qwalk/oracle.hpp"

namespace qwalk::oracle {

namespace {

constexpr int kAnchorEvery = 256;
constexpr double kTimeResolution = 1e-12;

// Frobenius norm bounds the spectral norm without an eigensolve.
double norm_bound(const CMatrix& h) { return std::max(1.0, h.norm()); }

// Evaluations inside [lo, hi] propagate from U(lo), so the exponentials have
// small arguments.
ScanMinimum refine(const Objective& obj, const CMatrix& h, double lo, double hi, ScanMinimum best) {
  const double base = lo;
  const CMatrix u0 = walk_matrix(h, base);
  auto f = [&](double t) { return obj.f(u0 * walk_matrix(h, t - base)); };
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > kTimeResolution) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
    if (f1 < best.value) best = {x1, f1};
    if (f2 < best.value) best = {x2, f2};
  }
  return best;
}

ScanResult summarize(const Objective& obj, const CMatrix& h, const std::vector<double>& times,
                     const std::vector<double>& values, double step, double record_below) {
  ScanResult out;
  out.grid_step = step;
  out.floor = std::numeric_limits<double>::infinity();
  const std::size_t count = times.size();
  const double refine_below = obj.lipschitz * step + record_below;

  for (std::size_t i = 1; i < count; ++i) {
    if (values[i] < out.floor) {
      out.floor = values[i];
      out.floor_t = times[i];
    }
    const bool last = i + 1 == count;
    if (values[i] > values[i - 1] || (!last && values[i] > values[i + 1])) continue;
    if (values[i] > refine_below) continue;

    ScanMinimum m{times[i], values[i]};
    const bool plateau = values[i - 1] <= record_below && (last || values[i + 1] <= record_below);
    if (!plateau) m = refine(obj, h, times[i - 1], last ? times[i] : times[i + 1], m);
    if (m.value < out.floor) {
      out.floor = m.value;
      out.floor_t = m.t;
    }
    if (m.value <= record_below) out.minima.push_back(m);
  }
  std::sort(out.minima.begin(), out.minima.end(), [](const auto& x, const auto& y) { return x.t < y.t; });
  return out;
}

}  // namespace

std::vector<ScanResult> scan_objectives(const CMatrix& h, Window window, double step,
                                        const std::vector<Objective>& objectives, double record_below) {
  if (!(step > 0.0)) throw InvalidArgument("scan: step must be positive");
  if (!(window.t1 > window.t0)) throw InvalidArgument("scan: empty window");
  if (h.rows() != h.cols()) throw InvalidArgument("scan: H must be square");

  const auto count = static_cast<std::size_t>(std::ceil((window.t1 - window.t0) / step)) + 1;
  std::vector<double> times(count);
  std::vector<std::vector<double>> values(objectives.size(), std::vector<double>(count));

  const CMatrix step_matrix = walk_matrix(h, step);
  CMatrix u;
  CMatrix next(h.rows(), h.cols());
  for (std::size_t i = 0; i < count; ++i) {
    const double t = std::min(window.t1, window.t0 + static_cast<double>(i) * step);
    times[i] = t;
    if (i % kAnchorEvery == 0 || i + 1 == count) {
      u = walk_matrix(h, t);
    } else {
      next.noalias() = u * step_matrix;
      u.swap(next);
    }
    for (std::size_t k = 0; k < objectives.size(); ++k) values[k][i] = objectives[k].f(u);
  }

  std::vector<ScanResult> out;
  for (std::size_t k = 0; k < objectives.size(); ++k)
    out.push_back(summarize(objectives[k], h, times, values[k], step, record_below));
  return out;
}

Objective return_objective(const CMatrix& p, const CMatrix& h) { return transfer_objective(p, p, h); }

Objective transfer_objective(const CMatrix& p, const CMatrix& q, const CMatrix& h) {
  if (p.rows() != h.rows() || q.rows() != h.rows()) throw InvalidArgument("scan: dimension mismatch");
  return {[p, q](const CMatrix& u) {
            const CMatrix moved = u * p * u.adjoint();
            return std::sqrt(kernels::distance_sq(flat(moved), flat(q)));
          },
          2.0 * norm_bound(h) * std::max(1.0, p.norm())};
}

Objective imaginary_objective(const CMatrix& p, const CMatrix& h) {
  if (p.rows() != h.rows()) throw InvalidArgument("scan: dimension mismatch");
  return {[p](const CMatrix& u) {
            const CMatrix moved = u * p * u.adjoint();
            return std::sqrt(kernels::imag_norm_sq(flat(moved)));
          },
          2.0 * norm_bound(h) * std::max(1.0, p.norm())};
}

Objective flatness_objective(const CMatrix& h, int a) {
  if (a < 0 || a >= h.rows()) throw InvalidArgument("scan: vertex out of range");
  const double target = 1.0 / static_cast<double>(h.rows());
  return {[a, target](const CMatrix& u) {
            const auto rows = static_cast<std::size_t>(u.rows());
            return kernels::max_probability_defect({u.data() + a * rows, rows}, target);
          },
          2.0 * norm_bound(h)};
}

Objective uniform_flatness_objective(const CMatrix& h) {
  const double target = 1.0 / static_cast<double>(std::max<Eigen::Index>(1, h.rows()));
  return {[target](const CMatrix& u) { return kernels::max_probability_defect(flat(u), target); },
          2.0 * norm_bound(h)};
}

ScanResult scan_return(const CMatrix& p, const CMatrix& h, Window window, double step, double record_below) {
  return scan_objectives(h, window, step, {return_objective(p, h)}, record_below).front();
}

ScanResult scan_transfer(const CMatrix& p, const CMatrix& q, const CMatrix& h, Window window, double step,
                         double record_below) {
  return scan_objectives(h, window, step, {transfer_objective(p, q, h)}, record_below).front();
}

ScanResult scan_flatness(const CMatrix& h, int a, Window window, double step, double record_below) {
  return scan_objectives(h, window, step, {flatness_objective(h, a)}, record_below).front();
}

}  // namespace qwalk::oracle
