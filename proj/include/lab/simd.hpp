#pragma once
#include <cstddef>

namespace lab::simd {

// Hot numeric inner loops, provided as a scalar reference implementation and
// an AVX2+FMA variant selected at runtime. Every entry point has identical
// semantics across variants; the equivalence test suite pins them together.
struct Kernels {
  // sum_i x[i], pairwise association
  double (*sum)(const double* x, std::size_t n);
  // sum_i x[i]*y[i], pairwise association
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[i] += a*x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out[i] = s[i] * exp(a*x[i] + b)   (s may be null -> s[i] == 1)
  void (*exp_scale)(const double* x, double a, double b, const double* s, double* out, std::size_t n);
  // sum_i exp(a*x[i] + b)
  double (*sum_exp)(const double* x, double a, double b, std::size_t n);
  const char* name;
};

const Kernels& scalar_kernels();
// Runtime-selected table (AVX2 when the CPU supports avx2+fma, else scalar).
const Kernels& active();
bool avx2_active();
// Test hook: force the scalar path process-wide (true) or restore detection (false).
void force_scalar(bool on);

#if defined(LAB_HAVE_AVX2_TU)
const Kernels& avx2_kernels(); // defined only when the AVX2 TU is compiled in
#endif

} // namespace lab::simd
