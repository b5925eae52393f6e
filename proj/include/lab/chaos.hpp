#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <vector>

#include "lab/spectral.hpp"

namespace lab::chaos {

using spec::Mesh;
using spec::Spectrum;

// Number of nonzero modes to use on a mesh of scale h: all computed modes
// with lambda below the mesh Nyquist scale h^{-2}/4 (resolving finer modes is
// meaningless), capped by what the spectrum holds.
int modes_for_mesh(const Spectrum& spectrum, double h);

// One Gaussian free field draw: X = sqrt(2 pi) sum_{j=1}^{n_modes} a_j phi_j / sqrt(lambda_j),
// deterministic in (seed, index).  The zero mode is never sampled.
struct GffSample {
  Eigen::VectorXd a;
  Eigen::VectorXd field;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
};

GffSample sample_gff(const Spectrum& spectrum, int n_modes, std::uint64_t seed,
                     std::uint64_t index);

// Batch of fields as columns of a V x count matrix; column s is identical to
// sample_gff(spectrum, n_modes, seed, first_index + s).field.
Eigen::MatrixXd sample_gff_batch(const Spectrum& spectrum, int n_modes, std::uint64_t seed,
                                 std::uint64_t first_index, int count);

// Area-weighted annulus-band averaging operator: row x holds normalized
// weights over vertices at graph distance within [eps_x - band, eps_x + band]
// of x, band = mesh.h.  Radii must lie in the resolved window
// [5h, max(0.2, 11h)].
struct CircleOp {
  Eigen::SparseMatrix<double, Eigen::RowMajor> A;
  Eigen::VectorXd eps;
  double band = 0.0;
};

CircleOp circle_op(const Mesh& mesh, double eps);
CircleOp circle_op(const Mesh& mesh, const Eigen::VectorXd& eps_per_vertex);

double circle_average(const CircleOp& op, const Eigen::VectorXd& field, int x);

// Gaussian multiplicative chaos atoms from one field sample:
//   mass_x = eps^{gamma^2/2} e^{gamma Xeps(x)} area_x,
// times (-log eps)^{1/2} when critical (gamma = 2 only), times the
// deterministic insertion factor e^{gamma sum_i alpha_i 2 pi G(x_i, x)}.
struct GmcOptions {
  double gamma = 1.0;
  double eps = 0.1;
  bool critical = false;
  std::vector<std::pair<int, double>> insertions;
};

// e^{gamma sum_i alpha_i 2 pi G(x_i, .)}; all-ones when no insertions.
Eigen::VectorXd insertion_factor(const Spectrum& spectrum, const Mesh& mesh,
                                 const GmcOptions& opt);

// Per-vertex masses for one field (area vector = hyperbolic vertex areas, or
// e^omega-scaled areas for a conformal metric).
Eigen::VectorXd gmc_mass(const CircleOp& op, const Eigen::VectorXd& area,
                         const Eigen::VectorXd& field, const GmcOptions& opt,
                         const Eigen::VectorXd* factor = nullptr);

// Ensemble of total masses, batched synthesis; sample s uses rng stream
// (seed, mod_gff, s).
std::vector<double> gmc_total_masses(const Spectrum& spectrum, const CircleOp& op,
                                     const Eigen::VectorXd& area, const GmcOptions& opt,
                                     int n_modes, std::uint64_t seed, int n_samples,
                                     const Eigen::VectorXd* factor = nullptr);

}  // namespace lab::chaos
