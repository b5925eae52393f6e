#include "lab/simd.hpp"

#if defined(LAB_HAVE_AVX2_TU)
#include <immintrin.h>
#include <cmath>

namespace lab::simd {
namespace {

constexpr std::size_t kBlock = 256; // elements per pairwise leaf (vector loop)

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double sum_leaf(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double sum_avx2(const double* x, std::size_t n) {
  if (n <= kBlock) return sum_leaf(x, n);
  std::size_t h = n / 2;
  return sum_avx2(x, h) + sum_avx2(x + h, n - h);
}

double dot_leaf(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), a1);
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  if (n <= kBlock) return dot_leaf(x, y, n);
  std::size_t h = n / 2;
  return dot_avx2(x, y, h) + dot_avx2(x + h, y + h, n - h);
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

// exp(v) by Cody-Waite range reduction and a degree-13 Taylor polynomial.
// Accurate to a few ulp on [-700, 700]; inputs are clamped to that range.
inline __m256d vexp(__m256d v) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  v = _mm256_min_pd(_mm256_set1_pd(700.0), _mm256_max_pd(_mm256_set1_pd(-700.0), v));
  __m256d nr = _mm256_round_pd(_mm256_mul_pd(v, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(nr, ln2_hi, v);
  r = _mm256_fnmadd_pd(nr, ln2_lo, r);
  const double inv_fact[14] = {
      1.0,
      1.0,
      5.00000000000000000000e-01,
      1.66666666666666666667e-01,
      4.16666666666666666667e-02,
      8.33333333333333333333e-03,
      1.38888888888888888889e-03,
      1.98412698412698412698e-04,
      2.48015873015873015873e-05,
      2.75573192239858906526e-06,
      2.75573192239858906526e-07,
      2.50521083854417187751e-08,
      2.08767569878680989792e-09,
      1.60590438368216145994e-10};
  __m256d p = _mm256_set1_pd(inv_fact[13]);
  for (int k = 12; k >= 0; --k) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(inv_fact[k]));
  __m128i n32 = _mm256_cvtpd_epi32(nr);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

void exp_scale_avx2(const double* x, double a, double b, const double* s, double* out, std::size_t n) {
  __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d e = vexp(_mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vb));
    if (s) e = _mm256_mul_pd(e, _mm256_loadu_pd(s + i));
    _mm256_storeu_pd(out + i, e);
  }
  for (; i < n; ++i) {
    double e = std::exp(a * x[i] + b);
    out[i] = s ? s[i] * e : e;
  }
}

double sum_exp_leaf(const double* x, double a, double b, std::size_t n) {
  __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, vexp(_mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vb)));
  double sv = hsum(acc);
  for (; i < n; ++i) sv += std::exp(a * x[i] + b);
  return sv;
}

double sum_exp_avx2(const double* x, double a, double b, std::size_t n) {
  if (n <= kBlock) return sum_exp_leaf(x, a, b, n);
  std::size_t h = n / 2;
  return sum_exp_avx2(x, a, b, h) + sum_exp_avx2(x + h, a, b, n - h);
}

} // namespace

const Kernels& avx2_kernels() {
  static const Kernels k{sum_avx2, dot_avx2, axpy_avx2, exp_scale_avx2, sum_exp_avx2, "avx2"};
  return k;
}

} // namespace lab::simd
#endif // LAB_HAVE_AVX2_TU
