#pragma once
#include <array>
#include <cstdint>

namespace lab::rng {

// Counter-based Philox4x32-10 stream. A stream is keyed by (seed, module id,
// stream index); draws within a stream are consumed sequentially. Re-running
// with the same key reproduces the exact sequence regardless of what other
// streams were used, so per-sample streams parallelize without coupling.
class Stream {
public:
  Stream(std::uint64_t seed, std::uint32_t module_id, std::uint64_t stream_index);

  std::uint32_t u32();
  std::uint64_t u64();
  double u01();    // uniform on (0,1], 53-bit
  double normal(); // standard normal, Box-Muller cosine branch
  // Gamma(shape, rate=1) via Marsaglia-Tsang; shape > 0.
  double gamma(double shape);

private:
  void refill();
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> buf_;
  int pos_;
};

// Stable module ids used to key streams (never reorder).
enum ModuleId : std::uint32_t {
  mod_gff = 1,
  mod_gmc = 2,
  mod_collar = 3,
  mod_lqg = 4,
  mod_spec = 5,
  mod_test = 99,
};

} // namespace lab::rng
