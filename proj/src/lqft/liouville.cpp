#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "lab/errors.hpp"
#include "lab/lqft.hpp"
#include "lab/numerics.hpp"
#include "lab/simd.hpp"

namespace lab::lqft {

Params params_from_gamma(double gamma, double mu) {
  require(gamma > 0.0 && gamma <= 2.0, ErrKind::domain, "gamma must be in (0, 2]");
  require(mu > 0.0, ErrKind::domain, "mu must be positive");
  Params p;
  p.gamma = gamma;
  p.mu = mu;
  p.Q = 2.0 / gamma + gamma / 2.0;
  p.c_L = 1.0 + 6.0 * p.Q * p.Q;
  return p;
}

Kpz kpz_gamma(double c_M) {
  require(c_M <= 1.0, ErrKind::domain, "matter central charge must be <= 1");
  Kpz k;
  k.gamma = (std::sqrt(25.0 - c_M) - std::sqrt(1.0 - c_M)) / std::sqrt(6.0);
  k.Q = 2.0 / k.gamma + k.gamma / 2.0;
  k.c_L = 1.0 + 6.0 * k.Q * k.Q;
  require(std::abs(c_M + k.c_L - 26.0) < 1e-12, ErrKind::pipeline,
          "central-charge balance broken");
  return k;
}

SeibergReport seiberg_check(const Params& p, const std::vector<double>& alphas, int genus) {
  SeibergReport r;
  double sum = 0.0;
  r.each_ok = true;
  for (double a : alphas) {
    sum += a;
    if (!(a < p.Q)) r.each_ok = false;
  }
  r.s = sum + 2.0 * p.Q * (genus - 1);
  r.sum_ok = r.s > 0.0;
  return r;
}

namespace {

PartitionEstimate assemble(double log_det, double vol, const Params& p, double q,
                           const std::vector<double>& masses) {
  require(q > 0.0, ErrKind::domain, "moment exponent must be positive");
  PartitionEstimate e;
  e.q = q;
  e.det_factor = std::exp(-0.5 * (log_det - std::log(vol)));
  e.gamma_factor = 1.0 / p.gamma;
  e.mu_factor = std::pow(p.mu, -q);
  e.gamma_fn = std::tgamma(q);
  const num::NegMoment nm = num::neg_moment(masses, q);
  e.moment = nm.value;
  e.moment_stderr = nm.stderr_value;
  const double pref = e.det_factor * e.gamma_factor * e.mu_factor * e.gamma_fn;
  e.value = pref * e.moment;
  e.stderr_value = pref * e.moment_stderr;
  return e;
}

}  // namespace

PartitionEstimate partition(double log_det, double vol, const Params& p, int genus,
                            const std::vector<double>& masses) {
  require(genus >= 2, ErrKind::domain, "partition needs genus >= 2");
  const double q = 2.0 * p.Q * (genus - 1) / p.gamma;  // = -Q chi / gamma
  return assemble(log_det, vol, p, q, masses);
}

CorrelatorResult correlator(double log_det, double vol, const Params& p, int genus,
                            const Spectrum& spectrum, const Eigen::VectorXd& robin_w,
                            const std::vector<int>& vertices, const std::vector<double>& alphas,
                            const std::vector<double>& shifted_masses) {
  require(genus >= 2, ErrKind::domain, "correlator needs genus >= 2");
  require(vertices.size() == alphas.size(), ErrKind::domain,
          "insertion vertices and weights must pair up");
  const SeibergReport sb = seiberg_check(p, alphas, genus);
  if (!sb.each_ok) fail(ErrKind::seiberg, "insertion weight at or above Q");
  if (!sb.sum_ok) fail(ErrKind::seiberg, "total weight fails the positivity bound");
  std::set<int> uniq(vertices.begin(), vertices.end());
  require(uniq.size() == vertices.size(), ErrKind::domain, "coincident insertion points");

  const int n = static_cast<int>(vertices.size());
  const spec::GreenOp green = spec::make_green(spectrum);
  double logc = 0.0;
  for (int i = 0; i < n; ++i) {
    logc += 0.5 * alphas[i] * alphas[i] * robin_w(vertices[i]);
    for (int j = i + 1; j < n; ++j)
      logc += 2.0 * M_PI * alphas[i] * alphas[j] * green(vertices[i], vertices[j]);
  }

  CorrelatorResult r;
  r.s = sb.s;
  r.log_prefactor = logc;
  r.est = assemble(log_det, vol, p, sb.s / p.gamma, shifted_masses);
  const double ec = std::exp(logc);
  r.est.value *= ec;
  r.est.stderr_value *= ec;
  return r;
}

double c_integral(const std::vector<double>& masses, const Params& p, int genus, double c_lo,
                  double c_hi, double dc) {
  const double chi = 2.0 - 2.0 * genus;
  const std::size_t n = masses.size();
  require(n > 0, ErrKind::domain, "empty ensemble");
  const int nodes = static_cast<int>(std::ceil((c_hi - c_lo) / dc)) + 1;
  std::vector<double> cs(nodes), f(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double c = c_lo + (c_hi - c_lo) * double(i) / double(nodes - 1);
    const double lap =
        simd::active().sum_exp(masses.data(), -p.mu * std::exp(p.gamma * c), 0.0, n) / double(n);
    cs[i] = c;
    f[i] = std::exp(-p.Q * chi * c) * lap;
  }
  return num::trapezoid(cs, f);
}

double anomaly_integral(const LaplaceOp& op, const Eigen::VectorXd& omega) {
  const double curv = -2.0;
  return omega.dot(op.stiff * omega) + 2.0 * curv * op.mass.dot(omega);
}

AnomalyResult anomaly_check(const Mesh& mesh, const LaplaceOp& op, const Spectrum& spectrum,
                            const Params& p, const Eigen::VectorXd& omega, double eps,
                            int n_modes, std::uint64_t seed, int n_samples, int n_batches) {
  require(omega.size() == op.mass.size(), ErrKind::domain, "omega size mismatch");
  require(omega.cwiseAbs().maxCoeff() <= 0.2 + 1e-12, ErrKind::domain,
          "omega amplitude above the perturbative window");
  const int genus = mesh.genus;
  const double q = 2.0 * p.Q * (genus - 1) / p.gamma;

  AnomalyResult out;
  out.integral = anomaly_integral(op, omega);
  // Moment-sector prediction: the full anomaly factor exp(c_L I / 96 pi)
  // splits into the Polyakov determinant shift exp(I / 96 pi), which the
  // ghat pipeline applies exactly by construction, and exp(6 Q^2 I / 96 pi)
  // carried by the chaos moments, which is what the ensemble must reproduce.
  out.predicted_moment_ratio = std::exp(p.Q * p.Q / (16.0 * M_PI) * out.integral);

  const Eigen::VectorXd area_g = spectrum.mass;
  const Eigen::VectorXd eomega = omega.array().exp().matrix();
  const Eigen::VectorXd area_h = area_g.cwiseProduct(eomega);
  const double vol_h = area_h.sum();

  const chaos::CircleOp op_g = chaos::circle_op(mesh, eps);
  const Eigen::VectorXd radii_h = eps * (-0.5 * omega.array()).exp();
  const chaos::CircleOp op_h = chaos::circle_op(mesh, radii_h);

  GmcOptions gopt;
  gopt.gamma = p.gamma;
  gopt.eps = eps;

  std::vector<double> m_g, m_h;
  m_g.reserve(n_samples);
  m_h.reserve(n_samples);
  const int chunk = 64;
  for (int s0 = 0; s0 < n_samples; s0 += chunk) {
    const int c = std::min(chunk, n_samples - s0);
    const Eigen::MatrixXd fields = chaos::sample_gff_batch(spectrum, n_modes, seed, s0, c);
    for (int s = 0; s < c; ++s) {
      const Eigen::VectorXd& x = fields.col(s);
      m_g.push_back(chaos::gmc_mass(op_g, area_g, x, gopt).sum());
      // ghat field: same sample, re-centered to be mean-zero against dv_hat.
      const Eigen::VectorXd xh = x.array() - area_h.dot(x) / vol_h;
      m_h.push_back(chaos::gmc_mass(op_h, area_h, xh, gopt).sum());
    }
  }

  out.moment_ratio = num::neg_moment(m_h, q).value / num::neg_moment(m_g, q).value;
  out.ratio = out.moment_ratio / out.predicted_moment_ratio;

  std::vector<double> batch_ratio;
  const int per = n_samples / n_batches;
  for (int b = 0; b < n_batches; ++b) {
    std::vector<double> bg(m_g.begin() + b * per, m_g.begin() + (b + 1) * per);
    std::vector<double> bh(m_h.begin() + b * per, m_h.begin() + (b + 1) * per);
    batch_ratio.push_back(num::neg_moment(bh, q).value / num::neg_moment(bg, q).value /
                          out.predicted_moment_ratio);
  }
  out.stderr_ratio = num::stderr_mean(batch_ratio);
  return out;
}

Mesh relabel_mesh(const Mesh& mesh, const std::vector<int>& perm) {
  const int n = mesh.n_vertices;
  require(static_cast<int>(perm.size()) == n, ErrKind::domain, "permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    require(v >= 0 && v < n && !seen[v], ErrKind::domain, "not a permutation");
    seen[v] = true;
  }
  Mesh m2 = mesh;
  for (auto& t : m2.tris)
    for (int k = 0; k < 3; ++k) t.v[k] = perm[t.v[k]];
  for (int v = 0; v < n; ++v) {
    m2.vertex_area[perm[v]] = mesh.vertex_area[v];
    m2.tag[perm[v]] = mesh.tag[v];
  }
  m2.grids.clear();
  return m2;
}

Spectrum relabel_spectrum(const Spectrum& spectrum, const std::vector<int>& perm) {
  const int n = static_cast<int>(spectrum.mass.size());
  require(static_cast<int>(perm.size()) == n, ErrKind::domain, "permutation size mismatch");
  Spectrum s2;
  s2.lambda = spectrum.lambda;
  s2.area = spectrum.area;
  s2.phi.resize(spectrum.phi.rows(), spectrum.phi.cols());
  s2.mass.resize(n);
  for (int v = 0; v < n; ++v) {
    s2.phi.row(perm[v]) = spectrum.phi.row(v);
    s2.mass(perm[v]) = spectrum.mass(v);
  }
  return s2;
}

double diffeo_check(const Mesh& a, const Spectrum& sa, const Mesh& b, const Spectrum& sb,
                    const std::vector<int>& perm, const Params& p, int genus, double eps,
                    int n_modes, std::uint64_t seed, int n_samples) {
  const int n = a.n_vertices;
  require(b.n_vertices == n, ErrKind::domain, "vertex count mismatch");
  require(static_cast<int>(perm.size()) == n, ErrKind::domain, "permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    require(v >= 0 && v < n && !seen[v], ErrKind::domain, "not a permutation");
    seen[v] = true;
  }

  // Isomorphism check: every relabeled triangle of `a` must exist in `b` with
  // the same edge lengths (lengths travel with the vertices under sorting).
  std::map<std::array<int, 3>, std::array<double, 3>> by_verts;
  const auto canon = [](std::array<int, 3> v, std::array<double, 3> l) {
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2 - s; ++t)
        if (v[t] > v[t + 1]) {
          std::swap(v[t], v[t + 1]);
          std::swap(l[t], l[t + 1]);
        }
    return std::make_pair(v, l);
  };
  require(a.tris.size() == b.tris.size(), ErrKind::domain, "triangle count mismatch");
  for (const auto& t : b.tris) {
    auto [v, l] = canon(t.v, t.len);
    by_verts[v] = l;
  }
  for (const auto& t : a.tris) {
    auto [v, l] = canon({perm[t.v[0]], perm[t.v[1]], perm[t.v[2]]}, t.len);
    auto it = by_verts.find(v);
    require(it != by_verts.end(), ErrKind::domain, "relabeling is not a mesh isomorphism");
    for (int k = 0; k < 3; ++k)
      require(std::abs(it->second[k] - l[k]) <= 1e-9 * (1.0 + l[k]), ErrKind::domain,
              "relabeling distorts edge lengths");
  }

  GmcOptions gopt;
  gopt.gamma = p.gamma;
  gopt.eps = eps;
  const chaos::CircleOp op1 = chaos::circle_op(a, eps);
  const chaos::CircleOp op2 = chaos::circle_op(b, eps);
  const std::vector<double> t1 =
      chaos::gmc_total_masses(sa, op1, sa.mass, gopt, n_modes, seed, n_samples);
  const std::vector<double> t2 =
      chaos::gmc_total_masses(sb, op2, sb.mass, gopt, n_modes, seed, n_samples);

  // Label-independent determinant inputs; only the MC pipeline can differ.
  const double log_det = 0.0, vol = sa.area;
  const PartitionEstimate e1 = partition(log_det, vol, p, genus, t1);
  const PartitionEstimate e2 = partition(log_det, vol, p, genus, t2);
  return std::abs(e1.value - e2.value) / std::abs(e1.value);
}

}  // namespace lab::lqft
