#include <algorithm>
#include <cmath>

#include "qwalk/detectors.hpp"
#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr int kMaxRefinements = 64;
constexpr double kTimeResolution = 1e-12;

TimeMinimum golden_section(const std::function<double(double)>& f, double lo, double hi, TimeMinimum best) {
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

}  // namespace

std::vector<TimeMinimum> search_minima(const std::function<double(double)>& f, double t0, double t1, double step,
                                       double refine_below) {
  if (!(step > 0.0) || !(t1 > t0)) throw InvalidArgument("search_minima: need step > 0 and t1 > t0");
  const auto count = static_cast<std::size_t>(std::ceil((t1 - t0) / step)) + 1;
  std::vector<double> times(count);
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    times[i] = std::min(t1, t0 + static_cast<double>(i) * step);
    values[i] = f(times[i]);
  }

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < count; ++i) {
    const bool left_ok = i == 0 || values[i] <= values[i - 1];
    const bool right_ok = i + 1 == count || values[i] <= values[i + 1];
    if (left_ok && right_ok && values[i] <= refine_below) candidates.push_back(i);
  }
  if (candidates.size() > kMaxRefinements) {
    std::nth_element(candidates.begin(), candidates.begin() + kMaxRefinements, candidates.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    candidates.resize(kMaxRefinements);
  }
  const auto global = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  if (std::find(candidates.begin(), candidates.end(), global) == candidates.end()) candidates.push_back(global);

  std::vector<TimeMinimum> minima;
  for (std::size_t i : candidates) {
    const double lo = times[i == 0 ? 0 : i - 1];
    const double hi = times[std::min(i + 1, count - 1)];
    TimeMinimum best{times[i], values[i]};
    if (hi > lo) best = golden_section(f, lo, hi, best);
    minima.push_back(best);
  }
  std::sort(minima.begin(), minima.end(), [](const TimeMinimum& a, const TimeMinimum& b) { return a.t < b.t; });
  return minima;
}

}  // namespace qwalk
