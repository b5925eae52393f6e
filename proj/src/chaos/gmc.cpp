#include <algorithm>
#include <cmath>
#include <vector>

#include "lab/chaos.hpp"
#include "lab/errors.hpp"
#include "lab/simd.hpp"

namespace lab::chaos {

CircleOp circle_op(const Mesh& mesh, double eps) {
  return circle_op(mesh, Eigen::VectorXd::Constant(mesh.n_vertices, eps));
}

CircleOp circle_op(const Mesh& mesh, const Eigen::VectorXd& eps_per_vertex) {
  const int n = mesh.n_vertices;
  require(eps_per_vertex.size() == n, ErrKind::domain, "radius vector size mismatch");
  const double h = mesh.h;
  const double lo = 5.0 * h, hi = std::max(0.2, 11.0 * h);
  for (int x = 0; x < n; ++x)
    require(eps_per_vertex(x) >= lo - 1e-12 && eps_per_vertex(x) <= hi + 1e-12,
            ErrKind::domain, "circle radius outside the resolved window");

  const spec::VertexGraph graph = spec::vertex_graph(mesh);
  CircleOp op;
  op.eps = eps_per_vertex;
  op.band = h;
  std::vector<Eigen::Triplet<double>> trip;
  for (int x = 0; x < n; ++x) {
    const double eps = eps_per_vertex(x);
    const auto dist = spec::graph_distance(graph, x, eps + 2.0 * h);
    const auto w = spec::circle_average_weights(mesh, dist, eps, h);
    require(!w.empty(), ErrKind::mesh, "empty circle-average band");
    for (const auto& [i, wi] : w) trip.emplace_back(x, i, wi);
  }
  op.A.resize(n, n);
  op.A.setFromTriplets(trip.begin(), trip.end());
  return op;
}

double circle_average(const CircleOp& op, const Eigen::VectorXd& field, int x) {
  double s = 0.0;
  for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(op.A, x); it; ++it)
    s += it.value() * field(it.col());
  return s;
}

Eigen::VectorXd insertion_factor(const Spectrum& spectrum, const Mesh& mesh,
                                 const GmcOptions& opt) {
  const int n = static_cast<int>(spectrum.phi.rows());
  Eigen::VectorXd f = Eigen::VectorXd::Ones(n);
  if (opt.insertions.empty()) return f;
  const spec::GreenOp green = spec::make_green(spectrum);
  Eigen::VectorXd expo = Eigen::VectorXd::Zero(n);
  for (const auto& [x, alpha] : opt.insertions) {
    require(x >= 0 && x < n, ErrKind::domain, "insertion vertex out of range");
    // The log singularity at the insertion must be resolved: the vertex needs
    // neighbors inside the circle-average radius. h = 0.1 sits exactly on the
    // boundary and is admissible.
    require(5.0 * mesh.h <= 0.5 + 1e-12, ErrKind::domain,
            "mesh too coarse to resolve an insertion neighborhood");
    expo += (opt.gamma * alpha * 2.0 * M_PI) * green.row(x);
  }
  return expo.array().exp().matrix();
}

Eigen::VectorXd gmc_mass(const CircleOp& op, const Eigen::VectorXd& area,
                         const Eigen::VectorXd& field, const GmcOptions& opt,
                         const Eigen::VectorXd* factor) {
  require(opt.gamma > 0.0 && opt.gamma <= 2.0, ErrKind::domain, "gamma must be in (0, 2]");
  require(!opt.critical || opt.gamma == 2.0, ErrKind::domain,
          "critical normalization requires gamma = 2");
  require(opt.eps > 0.0 && (!opt.critical || opt.eps < 1.0), ErrKind::domain,
          "regularization radius must be positive (and < 1 when critical)");
  const int n = static_cast<int>(area.size());
  const double g2 = opt.gamma * opt.gamma / 2.0;

  // mass = eps^{g2} exp(gamma Xeps) * area through the runtime-dispatched exp
  // kernel.  The normalizing prefactor uses the nominal radius opt.eps even
  // when op carries per-vertex radii (a conformal metric rescales the radii
  // but not the measure normalization; the density shift e^{(1+gamma^2/4)omega}
  // accounts for the difference).
  Eigen::VectorXd xe = op.A * field;
  Eigen::VectorXd mass(n);
  simd::active().exp_scale(xe.data(), opt.gamma, g2 * std::log(opt.eps), area.data(),
                           mass.data(), n);
  if (opt.critical) mass *= std::sqrt(-std::log(opt.eps));
  if (factor) mass = mass.cwiseProduct(*factor);
  return mass;
}

std::vector<double> gmc_total_masses(const Spectrum& spectrum, const CircleOp& op,
                                     const Eigen::VectorXd& area, const GmcOptions& opt,
                                     int n_modes, std::uint64_t seed, int n_samples,
                                     const Eigen::VectorXd* factor) {
  std::vector<double> totals;
  totals.reserve(n_samples);
  const int chunk = 64;
  for (int s0 = 0; s0 < n_samples; s0 += chunk) {
    const int c = std::min(chunk, n_samples - s0);
    const Eigen::MatrixXd fields = sample_gff_batch(spectrum, n_modes, seed, s0, c);
    for (int s = 0; s < c; ++s)
      totals.push_back(gmc_mass(op, area, fields.col(s), opt, factor).sum());
  }
  return totals;
}

}  // namespace lab::chaos
