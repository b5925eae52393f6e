#include "lab/mesh.hpp"
#include "lab/errors.hpp"
#include <algorithm>
#include <cmath>
#include <map>

namespace lab::hyp {

double fermi_dist(double t0, double s0, double t1, double s1, double len) {
  double ds = std::abs(s0 - s1);
  if (ds > len) ds = std::fmod(ds, len);
  ds = std::min(ds, len - ds);
  double ch = std::cosh(t0) * std::cosh(t1) * std::cosh(ds) - std::sinh(t0) * std::sinh(t1);
  return std::acosh(std::max(1.0, ch));
}

std::vector<std::pair<double, int>> Mesh::circle_vertices(int curve) const {
  const CurveGrid& g = grids[curve];
  std::vector<std::pair<double, int>> out;
  out.reserve(g.n_cols);
  for (int m = 0; m < g.n_cols; ++m)
    out.emplace_back(g.cols[m], grid_vertex(curve, g.row_zero, m));
  return out;
}

namespace {

using Vec2 = Eigen::Vector2d;

// Fermi offset into the pants interior: +pi/2 off a hexagon-0 side (interior
// on the left of the walk), -pi/2 off a hexagon-1 side (mirror copy).
cplx strip_point(const Mat2& side_frame, int hex, double sp, double w) {
  double rot = (hex == 0) ? 0.5 * M_PI : -0.5 * M_PI;
  return frame_point(side_frame * translate(sp) * rotate(rot) * translate(w));
}

struct Builder {
  const FuchsianSurface& S;
  double h;
  Mesh M;
  std::map<std::pair<int, int>, double> edge_len;
  std::vector<std::array<double, 3>> W; // strip half-widths per (pants, slot)

  explicit Builder(const FuchsianSurface& s, double h_) : S(s), h(h_) {
    require(h > 0.0 && h < 1.0, ErrKind::mesh, "mesh spacing must lie in (0, 1)");
  }

  double twist_d(int c) const {
    double l = S.fn.lengths[c];
    double d = std::fmod(S.fn.twists[c] * l / (2.0 * M_PI), l);
    return d < 0.0 ? d + l : d;
  }

  int add_vertex(const RegionTag& t) {
    M.tag.push_back(t);
    return M.n_vertices++;
  }

  double reg_edge(int u, int v, double L) {
    if (u > v) std::swap(u, v);
    auto [it, fresh] = edge_len.try_emplace(std::make_pair(u, v), L);
    if (!fresh)
      require(std::abs(it->second - L) < 1e-7 * (1.0 + L), ErrKind::mesh,
              "edge length disagrees between charts");
    return it->second;
  }

  void add_tri(int a, int b, int c, double lab, double lbc, double lca) {
    require(a != b && b != c && a != c, ErrKind::mesh, "triangle with repeated vertex");
    lab = reg_edge(a, b, lab);
    lbc = reg_edge(b, c, lbc);
    lca = reg_edge(c, a, lca);
    require(lab + lbc > lca && lbc + lca > lab && lca + lab > lbc, ErrKind::mesh,
            "triangle inequality violated");
    M.tris.push_back({{a, b, c}, {lbc, lca, lab}});
  }

  bool side_above(int p, int slot) const {
    int c = S.decomp.curve_of[p][slot];
    const auto& g = S.decomp.gluings[c];
    return g.a.pants == p && g.a.slot == slot;
  }

  void compute_widths() {
    W.resize(S.decomp.n_pants);
    for (int p = 0; p < S.decomp.n_pants; ++p) {
      for (int i = 0; i < 3; ++i) {
        int c = S.decomp.curve_of[p][i];
        double l = S.fn.lengths[c];
        double tube = std::asinh(1.0 / std::sinh(l)); // embedded collar half-width
        double w = std::min({0.9 * tube, 0.45 * S.pants[p].seam_len[(i + 1) % 3],
                             0.45 * S.pants[p].seam_len[(i + 2) % 3]});
        require(w > 1e-4, ErrKind::mesh, "collar strip collapsed; geometry too extreme");
        W[p][i] = w;
      }
    }
  }

  void build_grid(int c) {
    const auto& g = S.decomp.gluings[c];
    double l = S.fn.lengths[c], a = 0.5 * l;
    double wa = W[g.a.pants][g.a.slot];
    double wb = W[g.b.pants][g.b.slot];
    double dtw = twist_d(c);

    CurveGrid cg;
    cg.curve = c;
    cg.length = l;
    cg.w_above = wa;
    cg.w_below = wb;

    // Special columns: the hexagon corners of both sides must be grid
    // columns so that rim polylines meet the seams exactly.
    // roles: 0 = a-side sigma 0, 1 = a-side sigma l/2, 2,3 = b-side images.
    std::array<double, 4> sp = {0.0, a, dtw, std::fmod(dtw + l - a, l)};
    std::array<int, 4> rep = {0, 1, 2, 3};
    double tol_s = 1e-5 * l;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < i; ++j) {
        double d = std::abs(sp[i] - sp[rep[j]]);
        d = std::min(d, l - d);
        if (d < tol_s && rep[i] == i) rep[i] = rep[j];
      }
    std::vector<double> specials;
    for (int i = 0; i < 4; ++i)
      if (rep[i] == i) specials.push_back(sp[i]);

    int n_base = std::max<int>(8, (int)std::ceil(l * std::cosh(std::max(wa, wb)) / h));
    double spacing = l / n_base;
    std::vector<double> cols = specials;
    for (int m = 0; m < n_base; ++m) {
      double s = m * spacing;
      bool clear = true;
      for (double q : specials) {
        double d = std::abs(s - q);
        d = std::min(d, l - d);
        if (d < 0.35 * spacing) { clear = false; break; }
      }
      if (clear) cols.push_back(s);
    }
    std::sort(cols.begin(), cols.end());
    cg.cols = cols;
    cg.n_cols = (int)cols.size();
    auto col_of = [&](double s) {
      for (int m = 0; m < cg.n_cols; ++m)
        if (std::abs(cg.cols[m] - s) < 1e-12 * (1.0 + l)) return m;
      fail(ErrKind::mesh, "lost a corner column");
    };
    cg.corner_above = {col_of(sp[rep[0]]), col_of(sp[rep[1]])};
    cg.corner_below = {col_of(sp[rep[2]]), col_of(sp[rep[3]])};

    int nb = std::max<int>(2, (int)std::ceil(wb / h));
    int na = std::max<int>(2, (int)std::ceil(wa / h));
    for (int j = 0; j <= nb; ++j) cg.rows.push_back(-wb + j * wb / nb);
    cg.rows[nb] = 0.0;
    for (int j = 1; j <= na; ++j) cg.rows.push_back(j * wa / na);
    cg.row_zero = nb;
    cg.n_rows = (int)cg.rows.size();

    cg.first_vertex = M.n_vertices;
    for (int r = 0; r < cg.n_rows; ++r)
      for (int m = 0; m < cg.n_cols; ++m) {
        RegionTag t;
        t.kind = RegionKind::cylinder;
        t.curve = c;
        t.pants = (cg.rows[r] >= 0.0) ? g.a.pants : g.b.pants;
        t.t = cg.rows[r];
        t.sigma = cg.cols[m];
        add_vertex(t);
      }
    M.grids[c] = cg;

    auto gv = [&](int r, int m) { return cg.first_vertex + r * cg.n_cols + m; };
    auto dd = [&](int ra, int ma, int rb, int mb) {
      return fermi_dist(cg.rows[ra], cg.cols[ma], cg.rows[rb], cg.cols[mb], l);
    };
    for (int m = 0; m < cg.n_cols; ++m) {
      int m2 = (m + 1) % cg.n_cols;
      for (int r = 0; r + 1 < cg.n_rows; ++r) {
        add_tri(gv(r, m), gv(r, m2), gv(r + 1, m2), dd(r, m, r, m2), dd(r, m2, r + 1, m2),
                dd(r + 1, m2, r, m));
        add_tri(gv(r, m), gv(r + 1, m2), gv(r + 1, m), dd(r, m, r + 1, m2),
                dd(r + 1, m2, r + 1, m), dd(r + 1, m, r, m));
      }
    }
  }

  // Rim corner of (pants, slot) on the given seam-side: which = 0 for the
  // sigma' = 0 corner, 1 for sigma' = l/2.
  int rim_corner(int p, int slot, int which) const {
    int c = S.decomp.curve_of[p][slot];
    const CurveGrid& g = M.grids[c];
    bool above = side_above(p, slot);
    int row = above ? g.n_rows - 1 : 0;
    int col = above ? g.corner_above[which] : g.corner_below[which];
    return g.first_vertex + row * g.n_cols + col;
  }

  // Ordered rim of (pants, slot) inside hexagon H: vertex ids and chart
  // positions, walked in the hexagon's own side direction (sigma' 0 -> l/2).
  void rim_polyline(int p, int slot, int H, std::vector<int>& ids, std::vector<cplx>& pos) const {
    int c = S.decomp.curve_of[p][slot];
    const CurveGrid& g = M.grids[c];
    bool above = side_above(p, slot);
    double l = g.length, a = 0.5 * l, dtw = 0.0;
    if (!above) dtw = twist_d(c);
    int row = above ? g.n_rows - 1 : 0;
    double w = above ? g.w_above : g.w_below;
    int c0 = above ? g.corner_above[0] : g.corner_below[0];
    int c1 = above ? g.corner_above[1] : g.corner_below[1];

    std::vector<std::pair<double, int>> ss; // (sigma_side, column)
    ss.reserve(g.n_cols);
    for (int m = 0; m < g.n_cols; ++m) {
      double s;
      if (m == c0) s = 0.0;
      else if (m == c1) s = a;
      else if (above) s = g.cols[m];
      else {
        s = std::fmod(dtw - g.cols[m] + 2.0 * l, l);
        if (l - s < 1e-9) s = 0.0;
      }
      ss.emplace_back(s, m);
    }
    std::sort(ss.begin(), ss.end());
    int i0 = -1, i1 = -1;
    for (int i = 0; i < (int)ss.size(); ++i) {
      if (ss[i].second == c0) i0 = i;
      if (ss[i].second == c1) i1 = i;
    }
    require(i0 == 0, ErrKind::mesh, "corner column is not first in side order");
    std::vector<std::pair<double, int>> picked; // (sigma', column)
    if (H == 0) {
      for (int i = i0; i <= i1; ++i) picked.emplace_back(ss[i].first, ss[i].second);
    } else {
      picked.emplace_back(0.0, ss[i0].second);
      for (int i = (int)ss.size() - 1; i >= i1; --i)
        picked.emplace_back(2.0 * a - ss[i].first, ss[i].second);
    }
    const Mat2& F = S.pants[p].side_frame[H][slot];
    for (auto [sprime, m] : picked) {
      ids.push_back(g.first_vertex + row * g.n_cols + m);
      pos.push_back(strip_point(F, H, sprime, w));
    }
  }

  struct SeamSeg {
    std::vector<int> interior;
    std::vector<double> d; // offsets of interior vertices along the seam
    double d0 = 0.0, d1 = 0.0;
  };

  SeamSeg build_seam(int p, int k) {
    SeamSeg seg;
    double s_len = S.pants[p].seam_len[k];
    seg.d0 = W[p][(k + 1) % 3];
    seg.d1 = s_len - W[p][(k + 2) % 3];
    require(seg.d1 - seg.d0 > 0.02 * s_len, ErrKind::mesh, "seam squeezed out by collar strips");
    int n = std::max<int>(1, (int)std::lround((seg.d1 - seg.d0) / h));
    for (int j = 1; j < n; ++j) {
      RegionTag t;
      t.kind = RegionKind::core;
      t.pants = p;
      seg.interior.push_back(add_vertex(t));
      seg.d.push_back(seg.d0 + (seg.d1 - seg.d0) * j / n);
    }
    return seg;
  }

  void triangulate_core(const std::vector<int>& ids, const std::vector<cplx>& pos, int p, int H) {
    int N = (int)ids.size();
    require(N >= 3, ErrKind::mesh, "degenerate core polygon");
    std::vector<Vec2> q(N);
    Vec2 ctr(0.0, 0.0);
    for (int m = 0; m < N; ++m) {
      q[m] = to_klein(pos[m]);
      ctr += q[m];
    }
    ctr /= N;
    // The fan/ring construction needs the polygon star-shaped about ctr in
    // the Klein chart (geodesics are straight there).
    auto star_ok = [&](const Vec2& c) {
      double sgn = 0.0;
      for (int m = 0; m < N; ++m) {
        Vec2 u = q[m] - c, v = q[(m + 1) % N] - c;
        double cr = u.x() * v.y() - u.y() * v.x();
        if (std::abs(cr) < 1e-14) return false;
        if (sgn == 0.0) sgn = cr;
        if (cr * sgn < 0.0) return false;
      }
      return true;
    };
    if (!star_ok(ctr)) {
      // second candidate: average of edge midpoints weighted by edge length
      Vec2 alt(0.0, 0.0);
      double tw = 0.0;
      for (int m = 0; m < N; ++m) {
        Vec2 mid = 0.5 * (q[m] + q[(m + 1) % N]);
        double wl = (q[(m + 1) % N] - q[m]).norm();
        alt += wl * mid;
        tw += wl;
      }
      alt /= tw;
      require(star_ok(alt), ErrKind::mesh, "core polygon is not star-shaped");
      ctr = alt;
    }

    double rin = 1e30;
    for (int m = 0; m < N; ++m) rin = std::min(rin, dist_klein(ctr, q[m]));
    int R = std::max(1, (int)std::lround(0.7 * rin / h));

    std::vector<int> prev_ids = ids;
    std::vector<Vec2> prev_q = q;
    RegionTag core_tag;
    core_tag.kind = RegionKind::core;
    core_tag.pants = p;
    core_tag.hex = H;
    for (int r = 1; r < R; ++r) {
      double f = 1.0 - double(r) / R;
      std::vector<int> ring_ids(N);
      std::vector<Vec2> ring_q(N);
      for (int m = 0; m < N; ++m) {
        ring_q[m] = ctr + f * (q[m] - ctr);
        ring_ids[m] = add_vertex(core_tag);
      }
      for (int m = 0; m < N; ++m) {
        int m2 = (m + 1) % N;
        double l_pp = dist_klein(prev_q[m], prev_q[m2]);
        double l_pr = dist_klein(prev_q[m2], ring_q[m2]);
        double l_rr = dist_klein(ring_q[m2], ring_q[m]);
        double l_rp = dist_klein(ring_q[m], prev_q[m]);
        double diag = dist_klein(prev_q[m], ring_q[m2]);
        add_tri(prev_ids[m], prev_ids[m2], ring_ids[m2], l_pp, l_pr, diag);
        add_tri(prev_ids[m], ring_ids[m2], ring_ids[m], diag, l_rr, l_rp);
      }
      prev_ids = ring_ids;
      prev_q = ring_q;
    }
    int vc = add_vertex(core_tag);
    for (int m = 0; m < N; ++m) {
      int m2 = (m + 1) % N;
      add_tri(prev_ids[m], prev_ids[m2], vc, dist_klein(prev_q[m], prev_q[m2]),
              dist_klein(prev_q[m2], ctr), dist_klein(ctr, prev_q[m]));
    }
  }

  void build_cores(int p) {
    // One welded seam segment per seam, shared by the two hexagon cores.
    std::array<SeamSeg, 3> seams = {build_seam(p, 0), build_seam(p, 1), build_seam(p, 2)};
    for (int H = 0; H < 2; ++H) {
      std::vector<int> ids;
      std::vector<cplx> pos;
      for (int i = 0; i < 3; ++i) {
        rim_polyline(p, i, H, ids, pos);
        int k = (i + 2) % 3;
        const SeamSeg& seg = seams[k];
        const Mat2& F = S.pants[p].seam_frame[H][k];
        for (size_t j = 0; j < seg.interior.size(); ++j) {
          ids.push_back(seg.interior[j]);
          pos.push_back(frame_point(F * translate(seg.d[j])));
        }
      }
      triangulate_core(ids, pos, p, H);
    }
  }

  Mesh finish() {
    // closed-manifold certificate: every edge in exactly two triangles
    std::map<std::pair<int, int>, int> cnt;
    for (const auto& t : M.tris)
      for (int k = 0; k < 3; ++k) {
        int u = t.v[k], v = t.v[(k + 1) % 3];
        if (u > v) std::swap(u, v);
        cnt[{u, v}]++;
      }
    for (const auto& [e, n] : cnt)
      require(n == 2, ErrKind::mesh, "mesh is not a closed manifold");
    M.n_edges = (int)cnt.size();
    int euler = M.n_vertices - M.n_edges + (int)M.tris.size();
    require(euler == 2 - 2 * M.genus, ErrKind::mesh, "Euler characteristic mismatch");

    M.vertex_area.assign(M.n_vertices, 0.0);
    M.area = 0.0;
    M.min_edge = 1e30;
    M.min_angle = 1e30;
    for (const auto& t : M.tris) {
      for (int k = 0; k < 3; ++k) {
        M.min_edge = std::min(M.min_edge, t.len[k]);
        // angle at vertex k lies between the two adjacent sides
        double ang = triangle_angle(t.len[(k + 1) % 3], t.len[(k + 2) % 3], t.len[k]);
        M.min_angle = std::min(M.min_angle, ang);
      }
      double A = triangle_area(t.len[0], t.len[1], t.len[2]);
      require(A > 0.0, ErrKind::mesh, "zero-area triangle");
      M.area += A;
      for (int k = 0; k < 3; ++k) M.vertex_area[t.v[k]] += A / 3.0;
    }
    require(std::abs(M.area - S.area) < 1e-5 * S.area, ErrKind::mesh,
            "triangle areas do not tile the surface");
    require(M.min_angle > 1e-5, ErrKind::mesh, "mesh contains a degenerate angle");
    return std::move(M);
  }

  Mesh run() {
    M.genus = S.fn.genus;
    M.h = h;
    M.grids.resize(S.fn.lengths.size());
    compute_widths();
    for (int c = 0; c < (int)S.fn.lengths.size(); ++c) build_grid(c);
    for (int p = 0; p < S.decomp.n_pants; ++p) build_cores(p);
    return finish();
  }
};

} // namespace

Mesh build_mesh(const FuchsianSurface& s, double h) { return Builder(s, h).run(); }

} // namespace lab::hyp
