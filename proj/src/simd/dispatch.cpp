#include "lab/simd.hpp"
#include <atomic>

namespace lab::simd {
namespace {

bool cpu_has_avx2_fma() {
#if defined(LAB_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<bool> g_force_scalar{false};

} // namespace

bool avx2_active() { return !g_force_scalar.load(std::memory_order_relaxed) && cpu_has_avx2_fma(); }

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

const Kernels& active() {
#if defined(LAB_HAVE_AVX2_TU)
  if (avx2_active()) return avx2_kernels();
#endif
  return scalar_kernels();
}

} // namespace lab::simd
