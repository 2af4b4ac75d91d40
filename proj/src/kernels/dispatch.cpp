#include <atomic>

#include "qwalk/error.hpp"
#include "qwalk/kernels.hpp"

namespace qwalk::kernels {

namespace {

struct Table {
  Isa isa;
  void (*accumulate_scaled)(cplx, std::span<const cplx>, std::span<cplx>);
  double (*distance_sq)(std::span<const cplx>, std::span<const cplx>);
  double (*imag_norm_sq)(std::span<const cplx>);
  double (*max_probability_defect)(std::span<const cplx>, double);
};

constexpr Table kScalar{Isa::scalar, scalar::accumulate_scaled, scalar::distance_sq, scalar::imag_norm_sq,
                        scalar::max_probability_defect};
#ifdef QWALK_HAVE_AVX2_KERNELS
constexpr Table kAvx2{Isa::avx2, avx2::accumulate_scaled, avx2::distance_sq, avx2::imag_norm_sq,
                      avx2::max_probability_defect};
#endif
#ifdef QWALK_HAVE_NEON_KERNELS
constexpr Table kNeon{Isa::neon, neon::accumulate_scaled, neon::distance_sq, neon::imag_norm_sq,
                      neon::max_probability_defect};
#endif

const Table* table_for(Isa isa) noexcept {
  switch (isa) {
#ifdef QWALK_HAVE_AVX2_KERNELS
    case Isa::avx2:
      return &kAvx2;
#endif
#ifdef QWALK_HAVE_NEON_KERNELS
    case Isa::neon:
      return &kNeon;
#endif
    default:
      return &kScalar;
  }
}

const Table* best_table() noexcept {
  if (isa_available(Isa::avx2)) return table_for(Isa::avx2);
  if (isa_available(Isa::neon)) return table_for(Isa::neon);
  return &kScalar;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{best_table()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(QWALK_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#ifdef QWALK_HAVE_NEON_KERNELS
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed)->isa; }

void force_isa(Isa isa) {
  if (!isa_available(isa)) throw InvalidArgument("kernel ISA not available: " + std::string(isa_name(isa)));
  current().store(table_for(isa), std::memory_order_relaxed);
}

void reset_isa() noexcept { current().store(best_table(), std::memory_order_relaxed); }

void accumulate_scaled(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  if (x.size() != y.size()) throw InvalidArgument("accumulate_scaled: size mismatch");
  current().load(std::memory_order_relaxed)->accumulate_scaled(alpha, x, y);
}

double distance_sq(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw InvalidArgument("distance_sq: size mismatch");
  return current().load(std::memory_order_relaxed)->distance_sq(a, b);
}

double imag_norm_sq(std::span<const cplx> a) { return current().load(std::memory_order_relaxed)->imag_norm_sq(a); }

double max_probability_defect(std::span<const cplx> v, double target) {
  return current().load(std::memory_order_relaxed)->max_probability_defect(v, target);
}

}  // namespace qwalk::kernels
