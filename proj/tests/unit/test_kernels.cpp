#include <doctest.h>

#include <random>
#include <vector>

#include "qwalk/error.hpp"
#include "qwalk/kernels.hpp"

namespace k = qwalk::kernels;
using k::cplx;

namespace {

std::vector<cplx> random_buffer(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {gauss(rng), gauss(rng)};
  return v;
}

struct Variant {
  k::Isa isa;
  void (*axpy)(cplx, std::span<const cplx>, std::span<cplx>);
  double (*dist)(std::span<const cplx>, std::span<const cplx>);
  double (*imag)(std::span<const cplx>);
  double (*defect)(std::span<const cplx>, double);
};

std::vector<Variant> variants() {
  std::vector<Variant> out;
#ifdef QWALK_HAVE_AVX2_KERNELS
  if (k::isa_available(k::Isa::avx2))
    out.push_back({k::Isa::avx2, k::avx2::accumulate_scaled, k::avx2::distance_sq, k::avx2::imag_norm_sq,
                   k::avx2::max_probability_defect});
#endif
#ifdef QWALK_HAVE_NEON_KERNELS
  if (k::isa_available(k::Isa::neon))
    out.push_back({k::Isa::neon, k::neon::accumulate_scaled, k::neon::distance_sq, k::neon::imag_norm_sq,
                   k::neon::max_probability_defect});
#endif
  return out;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar reference values") {
    std::vector<cplx> x = {{1, 2}, {3, -1}};
    std::vector<cplx> y = {{0, 0}, {1, 1}};
    k::scalar::accumulate_scaled({0, 1}, x, y);
    CHECK(y[0] == cplx(-2, 1));
    CHECK(y[1] == cplx(2, 4));
    CHECK(k::scalar::distance_sq(x, y) == doctest::Approx(9 + 1 + 1 + 25));
    CHECK(k::scalar::imag_norm_sq(x) == doctest::Approx(5));
    const std::vector<cplx> flat = {{0.5, 0}, {0, 0.5}, {-0.5, 0}, {0, -0.5}};
    CHECK(k::scalar::max_probability_defect(flat, 0.25) == doctest::Approx(0).epsilon(1e-15));
  }

  TEST_CASE("SIMD variants match the scalar reference") {
    std::mt19937_64 rng(7);
    for (const auto& v : variants()) {
      CAPTURE(k::isa_name(v.isa));
      for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 36, 64, 101}) {
        CAPTURE(n);
        const auto x = random_buffer(n, rng);
        const auto b = random_buffer(n, rng);
        auto y_ref = random_buffer(n, rng);
        auto y_simd = y_ref;
        const cplx alpha(0.3, -1.7);
        k::scalar::accumulate_scaled(alpha, x, y_ref);
        v.axpy(alpha, x, y_simd);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y_ref[i] - y_simd[i]) <= 1e-14 * (1 + std::abs(y_ref[i])));

        const double d_ref = k::scalar::distance_sq(x, b);
        CHECK(std::abs(v.dist(x, b) - d_ref) <= 1e-13 * (1 + d_ref));
        const double i_ref = k::scalar::imag_norm_sq(x);
        CHECK(std::abs(v.imag(x) - i_ref) <= 1e-13 * (1 + i_ref));
        const double f_ref = k::scalar::max_probability_defect(x, 0.1);
        CHECK(std::abs(v.defect(x, 0.1) - f_ref) <= 1e-14 * (1 + f_ref));
      }
    }
  }

  TEST_CASE("dispatch can be pinned and restored") {
    k::force_isa(k::Isa::scalar);
    CHECK(k::active_isa() == k::Isa::scalar);
    k::reset_isa();
    CHECK(k::isa_available(k::active_isa()));
    if (!k::isa_available(k::Isa::neon)) CHECK_THROWS_AS(k::force_isa(k::Isa::neon), qwalk::InvalidArgument);
  }

  TEST_CASE("size mismatch is rejected") {
    std::vector<cplx> a(3), b(4);
    CHECK_THROWS_AS(k::distance_sq(a, b), qwalk::InvalidArgument);
    CHECK_THROWS_AS(k::accumulate_scaled({1, 0}, a, b), qwalk::InvalidArgument);
  }
}
