#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "lab/chaos.hpp"
#include "lab/spectral.hpp"

namespace lab::lqft {

using chaos::CircleOp;
using chaos::GmcOptions;
using spec::LaplaceOp;
using spec::Mesh;
using spec::Spectrum;

// Liouville coupling data.  Q = 2/gamma + gamma/2, c_L = 1 + 6 Q^2.
struct Params {
  double gamma = 0.0;
  double mu = 0.0;
  double Q = 0.0;
  double c_L = 0.0;
};

Params params_from_gamma(double gamma, double mu);

// gamma from the matter central charge: gamma = (sqrt(25 - c_M) - sqrt(1 - c_M))/sqrt(6).
// Asserts the central-charge balance c_M + c_L - 26 = 0 to 1e-12.
struct Kpz {
  double gamma = 0.0;
  double Q = 0.0;
  double c_L = 0.0;
};

Kpz kpz_gamma(double c_M);

// Seiberg admissibility: s = sum alpha_i + 2 Q (genus - 1) > 0 and every
// alpha_i < Q.
struct SeibergReport {
  bool sum_ok = false;
  bool each_ok = false;
  double s = 0.0;
  bool ok() const { return sum_ok && each_ok; }
};

SeibergReport seiberg_check(const Params& p, const std::vector<double>& alphas, int genus);

// Fixed-modulus partition value assembled from its closed-form factors:
//   (det' / Vol)^{-1/2} gamma^{-1} mu^{-q} Gamma(q) E[M^{-q}],  q = 2Q(g-1)/gamma.
struct PartitionEstimate {
  double value = 0.0;
  double stderr_value = 0.0;
  double det_factor = 0.0;
  double gamma_factor = 0.0;
  double mu_factor = 0.0;
  double gamma_fn = 0.0;
  double moment = 0.0;
  double moment_stderr = 0.0;
  double q = 0.0;
};

PartitionEstimate partition(double log_det, double vol, const Params& p, int genus,
                            const std::vector<double>& masses);

// n-point correlator bookkeeping on top of shifted chaos masses (which must
// already carry the insertion factor):
//   e^{C(x)} (det'/Vol)^{-1/2} gamma^{-1} mu^{-s/gamma} Gamma(s/gamma) E[M_x^{-s/gamma}]
// with C(x) = sum_i (alpha_i^2/2) W(x_i) + 2 pi sum_{i<j} alpha_i alpha_j G(x_i, x_j).
struct CorrelatorResult {
  PartitionEstimate est;
  double log_prefactor = 0.0;
  double s = 0.0;
};

CorrelatorResult correlator(double log_det, double vol, const Params& p, int genus,
                            const Spectrum& spectrum, const Eigen::VectorXd& robin_w,
                            const std::vector<int>& vertices, const std::vector<double>& alphas,
                            const std::vector<double>& shifted_masses);

// Shared-ensemble oracle for the zero-mode integral: trapezoid quadrature of
//   int e^{-Q chi c} mean_i exp(-mu e^{gamma c} M_i) dc
// which equals gamma^{-1} mu^{Q chi/gamma} Gamma(-Q chi/gamma) mean_i M_i^{Q chi/gamma}
// exactly, sample by sample.
double c_integral(const std::vector<double>& masses, const Params& p, int genus,
                  double c_lo = -30.0, double c_hi = 10.0, double dc = 0.01);

// int (|d omega|^2 + 2 K omega) dv with K = -2 on a hyperbolic surface
// (stiffness quadratic form plus the curvature term).
double anomaly_integral(const LaplaceOp& op, const Eigen::VectorXd& omega);

// Conformal-anomaly harness: evaluates the partition on g and on
// ghat = e^omega g with shared seeds (Polyakov-shifted determinant, mean-zero
// field shift, e^{-omega/2}-scaled circle radii, e^omega-scaled areas) and
// returns ratio = [Pi(ghat)/Pi(g)] / exp(((1 + 6 Q^2)/96 pi) I), which the
// anomaly formula pins to 1.  The stderr comes from batch means of the ratio.
struct AnomalyResult {
  double ratio = 0.0;
  double stderr_ratio = 0.0;
  double integral = 0.0;       // I
  double moment_ratio = 0.0;   // E[Mhat^{-q}] / E[M^{-q}]
  double predicted_moment_ratio = 0.0;
};

AnomalyResult anomaly_check(const Mesh& mesh, const LaplaceOp& op, const Spectrum& spectrum,
                            const Params& p, const Eigen::VectorXd& omega, double eps,
                            int n_modes, std::uint64_t seed, int n_samples, int n_batches = 10);

// Vertex relabeling utilities (grids are dropped; only the abstract labeled
// complex survives, which is all the spectral/chaos pipeline uses).
Mesh relabel_mesh(const Mesh& mesh, const std::vector<int>& perm);
Spectrum relabel_spectrum(const Spectrum& spectrum, const std::vector<int>& perm);

// Relabeling invariance: perm must map triangles of `a` onto triangles of `b`
// with equal edge lengths (a mesh isomorphism; a = b with the identity is the
// trivial self-map).  Runs the partition pipeline on both with shared seeds
// and returns the relative discrepancy, which labeling invariance pins to
// summation roundoff.
double diffeo_check(const Mesh& a, const Spectrum& sa, const Mesh& b, const Spectrum& sb,
                    const std::vector<int>& perm, const Params& p, int genus, double eps,
                    int n_modes, std::uint64_t seed, int n_samples);

}  // namespace lab::lqft
