// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "qwalk/kernels.hpp"

namespace qwalk::kernels::avx2 {

namespace {

// Two complex values per register: [re0, im0, re1, im1].
inline const double* raw(std::span<const cplx> s) { return reinterpret_cast<const double*>(s.data()); }
inline double* raw(std::span<cplx> s) { return reinterpret_cast<double*>(s.data()); }

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline double horizontal_max(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

void accumulate_scaled(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const std::size_t n = x.size();
  const double* xs = raw(x);
  double* ys = raw(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  // (xr, xi) swapped to (xi, xr) and multiplied by (-ai, ai) gives the cross terms.
  const __m256d ai = _mm256_setr_pd(-alpha.imag(), alpha.imag(), -alpha.imag(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * i);
    __m256d yv = _mm256_loadu_pd(ys + 2 * i);
    const __m256d swapped = _mm256_permute_pd(xv, 0b0101);
    yv = _mm256_fmadd_pd(xv, ar, yv);
    yv = _mm256_fmadd_pd(swapped, ai, yv);
    _mm256_storeu_pd(ys + 2 * i, yv);
  }
  for (; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = cplx(y[i].real() + alpha.real() * xr - alpha.imag() * xi,
                y[i].imag() + alpha.real() * xi + alpha.imag() * xr);
  }
}

double distance_sq(std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t len = 2 * a.size();
  const double* as = raw(a);
  const double* bs = raw(b);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(as + i), _mm256_loadu_pd(bs + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(as + i + 4), _mm256_loadu_pd(bs + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; i + 4 <= len; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(as + i), _mm256_loadu_pd(bs + i));
    acc0 = _mm256_fmadd_pd(d, d, acc0);
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i) {
    const double d = as[i] - bs[i];
    sum += d * d;
  }
  return sum;
}

double imag_norm_sq(std::span<const cplx> a) {
  const std::size_t n = a.size();
  const double* as = raw(a);
  const __m256d imag_mask = _mm256_setr_pd(0.0, 1.0, 0.0, 1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_mul_pd(_mm256_loadu_pd(as + 2 * i), imag_mask);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double sum = horizontal_sum(acc);
  for (; i < n; ++i) sum += a[i].imag() * a[i].imag();
  return sum;
}

double max_probability_defect(std::span<const cplx> v, double target) {
  const std::size_t n = v.size();
  const double* vs = raw(v);
  const __m256d t = _mm256_set1_pd(target);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d worst = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(vs + 2 * i);
    const __m256d b = _mm256_loadu_pd(vs + 2 * i + 4);
    // hadd of squares: [|v0|^2, |v2|^2, |v1|^2, |v3|^2]
    const __m256d p = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    worst = _mm256_max_pd(worst, _mm256_and_pd(_mm256_sub_pd(p, t), abs_mask));
  }
  double result = horizontal_max(worst);
  for (; i < n; ++i) {
    const double p = v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
    result = std::max(result, std::abs(p - target));
  }
  return result;
}

}  // namespace qwalk::kernels::avx2
