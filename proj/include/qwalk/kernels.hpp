#pragma once

// Data-parallel inner loops over interleaved complex<double> buffers.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2+FMA (x86-64) or NEON (aarch64) variant. The free
// functions in qwalk::kernels dispatch to the best variant available on the
// running CPU; the per-ISA namespaces are exposed so tests can compare the
// variants against the reference directly.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qwalk::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

/// True when `isa` was compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// The variant currently used by the dispatching entry points.
Isa active_isa() noexcept;

/// Pin dispatch to `isa` (tests, benchmarks). Throws InvalidArgument when
/// the ISA is unavailable.
void force_isa(Isa isa);

/// Restore automatic selection.
void reset_isa() noexcept;

// y += alpha * x. Sizes must match.
void accumulate_scaled(cplx alpha, std::span<const cplx> x, std::span<cplx> y);

// sum_i |a_i - b_i|^2
double distance_sq(std::span<const cplx> a, std::span<const cplx> b);

// sum_i Im(a_i)^2
double imag_norm_sq(std::span<const cplx> a);

// max_i | |v_i|^2 - target |
double max_probability_defect(std::span<const cplx> v, double target);

namespace scalar {
void accumulate_scaled(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
double distance_sq(std::span<const cplx> a, std::span<const cplx> b);
double imag_norm_sq(std::span<const cplx> a);
double max_probability_defect(std::span<const cplx> v, double target);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define QWALK_HAVE_AVX2_KERNELS 1
namespace avx2 {
void accumulate_scaled(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
double distance_sq(std::span<const cplx> a, std::span<const cplx> b);
double imag_norm_sq(std::span<const cplx> a);
double max_probability_defect(std::span<const cplx> v, double target);
}  // namespace avx2
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define QWALK_HAVE_NEON_KERNELS 1
namespace neon {
void accumulate_scaled(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
double distance_sq(std::span<const cplx> a, std::span<const cplx> b);
double imag_norm_sq(std::span<const cplx> a);
double max_probability_defect(std::span<const cplx> v, double target);
}  // namespace neon
#endif

}  // namespace qwalk::kernels
