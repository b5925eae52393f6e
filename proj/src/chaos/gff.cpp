#include <cmath>
#include <vector>

#include "lab/chaos.hpp"
#include "lab/errors.hpp"
#include "lab/rng.hpp"

namespace lab::chaos {

int modes_for_mesh(const Spectrum& spectrum, double h) {
  const double cut = 1.0 / (4.0 * h * h);
  const int avail = static_cast<int>(spectrum.lambda.size()) - 1;
  int n = avail;
  for (int j = 1; j <= avail; ++j)
    if (spectrum.lambda(j) > cut) {
      n = j - 1;  // keep modes 1..j-1, every kept mode resolved at scale h
      break;
    }
  return std::max(n, 1);
}

namespace {

Eigen::VectorXd scaled_coeffs(const Spectrum& spectrum, int n_modes, std::uint64_t seed,
                              std::uint64_t index, Eigen::VectorXd* raw) {
  rng::Stream rs(seed, rng::mod_gff, index);
  Eigen::VectorXd c(n_modes);
  if (raw) raw->resize(n_modes);
  for (int j = 1; j <= n_modes; ++j) {
    const double a = rs.normal();
    if (raw) (*raw)(j - 1) = a;
    c(j - 1) = std::sqrt(2.0 * M_PI / spectrum.lambda(j)) * a;
  }
  return c;
}

}  // namespace

GffSample sample_gff(const Spectrum& spectrum, int n_modes, std::uint64_t seed,
                     std::uint64_t index) {
  require(n_modes >= 1, ErrKind::domain, "need at least one nonzero mode");
  require(n_modes + 1 <= spectrum.lambda.size(), ErrKind::domain,
          "more modes requested than computed");
  GffSample s;
  s.seed = seed;
  s.index = index;
  const Eigen::VectorXd c = scaled_coeffs(spectrum, n_modes, seed, index, &s.a);
  s.field = spectrum.phi.middleCols(1, n_modes) * c;
  return s;
}

Eigen::MatrixXd sample_gff_batch(const Spectrum& spectrum, int n_modes, std::uint64_t seed,
                                 std::uint64_t first_index, int count) {
  require(n_modes >= 1, ErrKind::domain, "need at least one nonzero mode");
  require(n_modes + 1 <= spectrum.lambda.size(), ErrKind::domain,
          "more modes requested than computed");
  // Column-by-column matvec, not one GEMM: keeps batch output bit-identical
  // to the single-sample path so callers can mix the two freely.
  Eigen::MatrixXd out(spectrum.phi.rows(), count);
  for (int s = 0; s < count; ++s)
    out.col(s) = spectrum.phi.middleCols(1, n_modes) *
                 scaled_coeffs(spectrum, n_modes, seed, first_index + s, nullptr);
  return out;
}

}  // namespace lab::chaos
