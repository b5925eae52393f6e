#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "lab/mesh.hpp"

namespace lab::spec {

using hyp::Mesh;

// Cotangent Laplacian with lumped (barycentric) vertex masses.  `stiff` is
// symmetric PSD with exact zero row sums; the quadratic form u^T stiff u is
// the discrete Dirichlet energy \int |du|^2 dv.
struct LaplaceOp {
  Eigen::SparseMatrix<double> stiff;
  Eigen::VectorXd mass;
  double area = 0.0;
};

LaplaceOp build_laplacian(const Mesh& mesh);

// Metric rescale g -> e^omega g.  In dimension two the Dirichlet energy is
// conformally invariant, so only the masses change.
LaplaceOp conformal_rescale(const LaplaceOp& op, const Eigen::VectorXd& omega);

// Lowest eigenpairs of stiff u = lambda mass u.  lambda is ascending with
// lambda[0] forced to exactly 0 and phi.col(0) the exact constant mode; all
// columns are orthonormal in the mass inner product and mass-orthogonal to
// constants for j >= 1.
struct Spectrum {
  Eigen::VectorXd lambda;
  Eigen::MatrixXd phi;
  Eigen::VectorXd mass;
  double area = 0.0;
};

// `automatic` picks dense for small problems and shift-invert Lanczos
// otherwise, and requires 4 * n_modes <= vertex count (the low-lying regime
// where the discrete eigenvalues track the surface).  Forcing a method lifts
// that cap; `dense` with n_modes = V - 1 yields the full discrete spectrum.
enum class EigMethod { automatic, dense, lanczos };

Spectrum eigensolve(const LaplaceOp& op, int n_modes, EigMethod method = EigMethod::automatic);

// Green function of the mean-zero Laplacian, G = sum_{j>=1} phi_j phi_j^T / lambda_j,
// kept in low-rank form.  `exclude_below` drops modes with lambda <= threshold
// from the sum (they are listed in `excluded`), which isolates the spectrally
// small part near a degeneration.
struct GreenOp {
  const Spectrum* spec = nullptr;
  std::vector<int> modes;  // mode indices included in the sum (all >= 1)
  std::vector<int> excluded;

  double operator()(int x, int y) const;
  Eigen::VectorXd row(int x) const;
};

GreenOp make_green(const Spectrum& spec, double exclude_below = 0.0);

// Dense Green matrix, same sum as GreenOp over all modes the spectrum holds.
// Whole-mesh covariance sweeps (circle-average variances at every vertex)
// touch each entry many times, so the n^2 store beats the low-rank form by
// the mode count.  Capped at 20k vertices (3.2 GB).
Eigen::MatrixXd green_table(const Spectrum& spec);

// Mean-zero shift for a conformal metric change: with dv_hat = e^omega dv,
//   G_hat(x,y) = G(x,y) - u(x) - u(y) + c
// is mean-zero against dv_hat and inverts the rescaled Laplacian.
struct ConformalShift {
  Eigen::VectorXd u;
  double c = 0.0;
};

ConformalShift conformal_green_shift(const Spectrum& spec, const Eigen::VectorXd& mass_hat);

// Vertex adjacency with intrinsic edge lengths, for geodesic-ball queries.
struct VertexGraph {
  std::vector<std::vector<std::pair<int, double>>> adj;
};

VertexGraph vertex_graph(const Mesh& mesh);

// Single-source distances; vertices beyond `cutoff` keep +inf.
std::vector<double> graph_distance(const VertexGraph& graph, int source,
                                   double cutoff = std::numeric_limits<double>::infinity());

// Area-weighted average over the annulus band [eps - band, eps + band]
// around the source, normalized to total weight 1.  Empty if no vertex falls
// in the band.
std::vector<std::pair<int, double>> circle_average_weights(const Mesh& mesh,
                                                           const std::vector<double>& dist,
                                                           double eps, double band);

// Robin field: per-vertex intercept W of the model Var[X_eps] = -log eps + W,
// where Var[X_eps] = 2 pi a^T G a for the circle-average weights a.
//
// The slope is fitted against the exact annulus abscissa, not -log eps: for
// band weights at Dijkstra radii r_i the angular average of -log tanh(d/2)
// over concentric circles has a closed form, and on a true circle of radius
// eps it reduces to -log tanh(eps/2).  Fitting against that abscissa removes
// the curvature and radial-smearing bias of the nominal -log eps at desk-size
// h, while W itself stays in the -log eps convention (mean of Var + log eps
// over the fit window) so chaos normalization at eps_center pairs exactly.
// Vertices whose annulus wraps a short handle spoil the top of the window;
// the fit retries with the top point removed (down to 5 points) and keeps
// the best slope.  FitBad means |slope + 1| > 0.10 after that.
struct RobinField {
  Eigen::VectorXd W;
  Eigen::VectorXd slope;
  std::vector<std::uint8_t> fit_bad;
  double frac_bad = 0.0;      // fraction of FitBad vertices
  double eps_center = 0.0;    // log-center of the full window
  std::vector<double> eps_grid;
};

// Needs the complete discrete spectrum (dense eigensolve with n_modes = V):
// a truncated Green function is missing the short-distance tail and biases
// every variance in the fit window by O(1 / (sqrt(lambda_max) eps)).
// Throws ErrKind::fit when frac_bad exceeds max_frac_bad; collar diagnostics
// that expect wrapped annuli can pass a larger budget.
RobinField robin_field(const Mesh& mesh, const Spectrum& spec, double max_frac_bad = 0.10);

// Variance of the circle average of radius eps at one vertex (2 pi a^T G a).
double circle_variance(const Mesh& mesh, const Spectrum& spec, const VertexGraph& graph,
                       int vertex, double eps);

// log det' via explicit eigenvalues plus a one-parameter Weyl tail.  The tail
// density rho is fitted from the top half of the computed spectrum
// (lambda_j ~ j / rho) and the cutoff is pinned by the counting identity
// n = rho lambda_cut + chi/6 - 1, which makes the implied zeta(0) equal the
// heat-kernel value chi/6 - 1 exactly, so det'(c Delta) = c^{zeta(0)} det'(Delta)
// holds identically for the returned value.
struct ZetaDet {
  double log_det = 0.0;
  double zeta0 = 0.0;
  double rho_hat = 0.0;      // fitted Weyl density, ideally area / (4 pi)
  double lambda_cut = 0.0;
  double tail_residual = 0.0;  // |rho_hat 4 pi / area - 1|
  bool tail_fit_bad = false;   // tail_residual > 0.10
  int n_used = 0;
};

ZetaDet zeta_det(const Eigen::VectorXd& lambda, double area, int chi, int n_used = -1);

inline ZetaDet zeta_det(const Spectrum& spec, int chi, int n_used = -1) {
  return zeta_det(spec.lambda, spec.area, chi, n_used);
}

// log det'(b) - log det'(a) from paired per-mode log ratios over the resolved
// window lambda <= lambda_cut, completed by the EXACT zeta-regularized tail
// (zeta0 - J) log(Area_a / Area_b): past the window both spectra follow the
// same Weyl law, so no tail parameter is fitted and constant conformal
// rescales are exact at every truncation.  Use for determinant differences
// between spectra on comparable meshes (conformal moves, nearby moduli);
// independent zeta_det tail fits would leave jitter ~ n * (fit noise) that
// this estimator avoids.  `spread` is the max-min of the truncation-window
// estimates: an honest resolution-noise bar dominated by quantum-ergodic
// density fluctuations, which do not vanish with mesh refinement.
struct PairedDet {
  double delta_log_det = 0.0;
  double spread = 0.0;
  int j_max = 0;
};

PairedDet zeta_det_paired(const Spectrum& a, const Spectrum& b, int chi, double lambda_cut);

}  // namespace lab::spec
