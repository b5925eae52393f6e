#include "lab/rng.hpp"
#include "lab/errors.hpp"
#include <cmath>

namespace lab::rng {

namespace {
constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = std::uint64_t(a) * b;
  hi = std::uint32_t(p >> 32);
  lo = std::uint32_t(p);
}

inline void philox_round(std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kM0, c[0], hi0, lo0);
  mulhilo(kM1, c[2], hi1, lo1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}
} // namespace

Stream::Stream(std::uint64_t seed, std::uint32_t module_id, std::uint64_t stream_index) : pos_(4) {
  key_ = {std::uint32_t(seed), std::uint32_t(seed >> 32)};
  // Block counter lives in ctr_[0..1]; stream identity in ctr_[2..3].
  ctr_ = {0u, 0u, std::uint32_t(stream_index), std::uint32_t(stream_index >> 32) ^ (module_id * 0x9E3779B9u)};
}

void Stream::refill() {
  std::array<std::uint32_t, 4> c = ctr_;
  std::array<std::uint32_t, 2> k = key_;
  for (int r = 0; r < 10; ++r) {
    philox_round(c, k);
    k[0] += kW0;
    k[1] += kW1;
  }
  buf_ = c;
  pos_ = 0;
  if (++ctr_[0] == 0u) ++ctr_[1]; // 64-bit block counter carry
}

std::uint32_t Stream::u32() {
  if (pos_ >= 4) refill();
  return buf_[pos_++];
}

std::uint64_t Stream::u64() {
  std::uint64_t hi = u32();
  return (hi << 32) | u32();
}

double Stream::u01() {
  // (v+1)/2^53 lies in (0,1]; safe under log().
  std::uint64_t v = u64() >> 11;
  return (double(v) + 1.0) * 0x1.0p-53;
}

double Stream::normal() {
  double u1 = u01();
  double u2 = u01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

double Stream::gamma(double shape) {
  require(shape > 0.0, ErrKind::domain, "gamma shape must be positive");
  if (shape < 1.0) {
    double u = u01();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = u01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

} // namespace lab::rng

namespace lab {
const char* to_string(ErrKind k) {
  switch (k) {
    case ErrKind::config: return "config";
    case ErrKind::domain: return "domain";
    case ErrKind::degenerate_triangle: return "degenerate_triangle";
    case ErrKind::mesh: return "mesh";
    case ErrKind::fit: return "fit";
    case ErrKind::tail_fit: return "tail_fit";
    case ErrKind::numdiff: return "numdiff";
    case ErrKind::budget: return "budget";
    case ErrKind::seiberg: return "seiberg";
    case ErrKind::pipeline: return "pipeline";
    case ErrKind::io: return "io";
  }
  return "unknown";
}

int exit_code(ErrKind k) {
  switch (k) {
    case ErrKind::config:
    case ErrKind::io: return 2;
    case ErrKind::budget: return 4;
    default: return 3;
  }
}
} // namespace lab
