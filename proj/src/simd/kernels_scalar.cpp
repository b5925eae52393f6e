#include "lab/simd.hpp"
#include <cmath>

namespace lab::simd {
namespace {

// Pairwise (recursive block) summation: O(log n) error growth and a fixed
// association that does not depend on call context.
constexpr std::size_t kBlock = 32;

double sum_scalar(const double* x, std::size_t n) {
  if (n <= kBlock) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return sum_scalar(x, h) + sum_scalar(x + h, n - h);
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  if (n <= kBlock) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
  }
  std::size_t h = n / 2;
  return dot_scalar(x, y, h) + dot_scalar(x + h, y + h, n - h);
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void exp_scale_scalar(const double* x, double a, double b, const double* s, double* out, std::size_t n) {
  if (s) {
    for (std::size_t i = 0; i < n; ++i) out[i] = s[i] * std::exp(a * x[i] + b);
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a * x[i] + b);
  }
}

double sum_exp_scalar(const double* x, double a, double b, std::size_t n) {
  if (n <= kBlock) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::exp(a * x[i] + b);
    return acc;
  }
  std::size_t h = n / 2;
  return sum_exp_scalar(x, a, b, h) + sum_exp_scalar(x + h, a, b, n - h);
}

} // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{sum_scalar, dot_scalar, axpy_scalar, exp_scale_scalar, sum_exp_scalar, "scalar"};
  return k;
}

} // namespace lab::simd
