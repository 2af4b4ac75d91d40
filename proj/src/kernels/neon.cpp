#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "qwalk/kernels.hpp"

namespace qwalk::kernels::neon {

namespace {
inline const double* raw(std::span<const cplx> s) { return reinterpret_cast<const double*>(s.data()); }
inline double* raw(std::span<cplx> s) { return reinterpret_cast<double*>(s.data()); }
}  // namespace

// One complex value per float64x2_t: [re, im].

void accumulate_scaled(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const double* xs = raw(x);
  double* ys = raw(y);
  const float64x2_t ar = vdupq_n_f64(alpha.real());
  const double cross[2] = {-alpha.imag(), alpha.imag()};
  const float64x2_t ai = vld1q_f64(cross);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const float64x2_t xv = vld1q_f64(xs + 2 * i);
    float64x2_t yv = vld1q_f64(ys + 2 * i);
    yv = vfmaq_f64(yv, xv, ar);
    yv = vfmaq_f64(yv, vextq_f64(xv, xv, 1), ai);
    vst1q_f64(ys + 2 * i, yv);
  }
}

double distance_sq(std::span<const cplx> a, std::span<const cplx> b) {
  const double* as = raw(a);
  const double* bs = raw(b);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const float64x2_t d = vsubq_f64(vld1q_f64(as + 2 * i), vld1q_f64(bs + 2 * i));
    acc = vfmaq_f64(acc, d, d);
  }
  return vaddvq_f64(acc);
}

double imag_norm_sq(std::span<const cplx> a) {
  const double* as = raw(a);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= a.size(); i += 2) {
    // uzp2 gathers the imaginary lanes of two consecutive values.
    const float64x2_t im = vuzp2q_f64(vld1q_f64(as + 2 * i), vld1q_f64(as + 2 * i + 2));
    acc = vfmaq_f64(acc, im, im);
  }
  double sum = vaddvq_f64(acc);
  for (; i < a.size(); ++i) sum += a[i].imag() * a[i].imag();
  return sum;
}

double max_probability_defect(std::span<const cplx> v, double target) {
  const double* vs = raw(v);
  const float64x2_t t = vdupq_n_f64(target);
  float64x2_t worst = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= v.size(); i += 2) {
    const float64x2_t a = vld1q_f64(vs + 2 * i);
    const float64x2_t b = vld1q_f64(vs + 2 * i + 2);
    const float64x2_t p = vpaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b));
    worst = vmaxq_f64(worst, vabsq_f64(vsubq_f64(p, t)));
  }
  double result = vmaxvq_f64(worst);
  for (; i < v.size(); ++i) {
    const double p = v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
    result = std::max(result, std::abs(p - target));
  }
  return result;
}

}  // namespace qwalk::kernels::neon
