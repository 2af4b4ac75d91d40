#include <algorithm>
#include <cmath>

#include "qwalk/kernels.hpp"

namespace qwalk::kernels::scalar {

void accumulate_scaled(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = cplx(y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr);
  }
}

double distance_sq(std::span<const cplx> a, std::span<const cplx> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dr = a[i].real() - b[i].real();
    const double di = a[i].imag() - b[i].imag();
    sum += dr * dr + di * di;
  }
  return sum;
}

double imag_norm_sq(std::span<const cplx> a) {
  double sum = 0.0;
  for (const cplx& z : a) sum += z.imag() * z.imag();
  return sum;
}

double max_probability_defect(std::span<const cplx> v, double target) {
  double worst = 0.0;
  for (const cplx& z : v) {
    const double p = z.real() * z.real() + z.imag() * z.imag();
    worst = std::max(worst, std::abs(p - target));
  }
  return worst;
}

}  // namespace qwalk::kernels::scalar
