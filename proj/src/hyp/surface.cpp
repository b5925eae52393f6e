#include "lab/surface.hpp"
#include "lab/errors.hpp"

#include <limits>

namespace lab::hyp {

namespace {

Mat2 flip_pi() { return rotate(M_PI); }

// Gluing isometry for a curve: maps the b-side boundary chart onto the a-side
// chart with orientation reversal and twist displacement d. Axis frames are
// the hexagon-0 side frames, so mesh and group share one twist convention:
// sigma_a = d - sigma_b.
Mat2 gluing_map(const Mat2& frame_a, const Mat2& frame_b, double d) {
  return frame_a * translate(d) * flip_pi() * frame_b.inverse();
}

// SL2 lifts of PSL2 identities float by a global sign; compare projectively.
double mat_err(const Mat2& m, const Mat2& n) {
  return std::min((m - n).norm(), (m + n).norm());
}

// ||m -+ id|| for the projective identity check
double proj_id_err(const Mat2& m) {
  Mat2 id = Mat2::Identity();
  return std::min(mat_err(m, id), mat_err(m, Mat2(-id)));
}

// Relation words cancel catastrophically: factors have norms up to e^seam
// (which grows along a chain and as curves pinch) while the exact product is
// +-id, so a fixed absolute gate is wrong on both sides. Track the standard
// forward bound fl(AB) = AB + E, ||E|| <= c eps ||A|| ||B||, i.e.
// bound' = bound ||m|| + c eps ||P|| ||m||; the constant also absorbs the
// assembly error of each factor (frames, translations, one inverse apiece).
struct TrackedProduct {
  Mat2 p = Mat2::Identity();
  double bound = 0.0;
  TrackedProduct& mul(const Mat2& m) {
    const double nm = m.norm();
    bound = bound * nm + 64.0 * std::numeric_limits<double>::epsilon() * p.norm() * nm;
    p = p * m;
    return *this;
  }
  TrackedProduct& comm(const Mat2& a, const Mat2& b) {
    return mul(a).mul(b).mul(Mat2(a.inverse())).mul(Mat2(b.inverse()));
  }
  // A construction bug leaves an O(||factor||) mismatch; floating error stays
  // inside the budget. The 256x headroom keeps the gate sharp in between.
  double tol() const { return std::max(1e-10, 256.0 * bound); }
};

} // namespace

FuchsianSurface build_surface(const FenchelNielsen& fn) {
  require(fn.genus >= 2, ErrKind::domain, "genus must be >= 2");
  const int nc = 3 * fn.genus - 3;
  require(int(fn.lengths.size()) == nc, ErrKind::domain, "need 3g-3 lengths");
  require(int(fn.twists.size()) == nc, ErrKind::domain, "need 3g-3 twists");
  for (double l : fn.lengths) require(l > 0.0, ErrKind::domain, "curve lengths must be positive");
  // Twists live on all of R; theta and theta + 2 pi differ by a Dehn twist
  // (same surface, different marking).
  for (double t : fn.twists) require(std::isfinite(t), ErrKind::domain, "twists must be finite");

  FuchsianSurface s;
  s.fn = fn;
  s.decomp = decomposition(fn.genus, fn.pattern);
  s.area = 4.0 * M_PI * (fn.genus - 1);

  for (int p = 0; p < s.decomp.n_pants; ++p) {
    auto c = s.decomp.curve_of[p];
    s.pants.push_back(build_pants(fn.lengths[c[0]], fn.lengths[c[1]], fn.lengths[c[2]]));
  }

  // Local boundary translations: X_i translates by +l_i along the hexagon-0
  // side-i axis. The right-angled hexagon geometry makes X0 X1 X2 = id.
  auto bdry_hol = [&](int p, int slot) -> Mat2 {
    const Mat2& a = s.pants[p].side_frame[0][slot];
    return a * translate(s.pants[p].bdry_len[slot]) * a.inverse();
  };
  auto pants_frame = [&](int p, int slot) -> const Mat2& {
    return s.pants[p].side_frame[0][slot];
  };
  auto twist_d = [&](int curve) { return fn.twists[curve] * fn.lengths[curve] / (2.0 * M_PI); };

  // With all boundary translations oriented along +sigma of the hexagon-0
  // sides, the seam-reflection factorization gives X2 X1 X0 = +-id.
  for (int p = 0; p < s.decomp.n_pants; ++p) {
    TrackedProduct rel;
    rel.mul(bdry_hol(p, 2)).mul(bdry_hol(p, 1)).mul(bdry_hol(p, 0));
    require(proj_id_err(rel.p) < rel.tol(), ErrKind::pipeline, "pants relation violated");
  }

  s.curves.resize(nc);
  const auto& D = s.decomp;
  std::vector<Mat2> phi(D.n_pants, Mat2::Identity());

  if (fn.pattern == FenchelNielsen::Pattern::theta) {
    // Tree edge = curve 0; stable letters for curves 1, 2.
    const auto& g0 = D.gluings[0];
    phi[1] = phi[0] * gluing_map(pants_frame(g0.a.pants, g0.a.slot),
                                 pants_frame(g0.b.pants, g0.b.slot), twist_d(0));
    Mat2 X1 = bdry_hol(0, 1), X2 = bdry_hol(0, 2);
    auto stable = [&](int curve) -> Mat2 {
      const auto& g = D.gluings[curve];
      Mat2 G = gluing_map(pants_frame(g.a.pants, g.a.slot), pants_frame(g.b.pants, g.b.slot),
                          twist_d(curve));
      return phi[g.a.pants] * G * phi[g.b.pants].inverse();
    };
    Mat2 t1 = stable(1), t2 = stable(2);
    // Eliminating the second pants from the two hexagon relations leaves
    // t2^-1 X2^-1 t2 t1^-1 X1^-1 t1 X2 X1 = 1, which factors exactly as
    // [t2^-1, X2^-1] [(t1 X2)^-1, X1^-1].
    Mat2 A1 = t2.inverse();
    Mat2 B1 = X2.inverse();
    Mat2 A2 = (t1 * X2).inverse();
    Mat2 B2 = X1.inverse();
    s.generators = {A1, B1, A2, B2};
    for (int c = 0; c < 3; ++c) {
      const auto& g = D.gluings[c];
      s.curves[c] = {fn.lengths[c], phi[g.a.pants] * bdry_hol(g.a.pants, g.a.slot) *
                                        phi[g.a.pants].inverse()};
    }
  } else {
    // Chain: left one-holed torus, (g-2) two-holed-torus middles, right
    // one-holed torus. Maintain running = prod_k [A_k, B_k]; each piece
    // extends the telescope toward the identity.
    int handleL = nc - 2, handleR = nc - 1;
    auto glue_of = [&](int curve) -> Mat2 {
      const auto& g = D.gluings[curve];
      return gluing_map(pants_frame(g.a.pants, g.a.slot), pants_frame(g.b.pants, g.b.slot),
                        twist_d(curve));
    };

    // Left torus: pants 0, handle curve glues slots (1,2). The gluing
    // relation tL X2 tL^-1 = X1^-1 plus X2 X1 X0 = 1 give
    // [X2, tL] = X2 X1 = X0^-1.
    Mat2 tL = glue_of(handleL); // phi[0] = id
    Mat2 A1 = bdry_hol(0, 2);
    Mat2 B1 = tL;
    s.generators = {A1, B1};
    TrackedProduct running;
    running.comm(A1, B1);
    Mat2 x0i = bdry_hol(0, 0).inverse();
    require(mat_err(running.p, x0i) < running.tol() + 1e-10 * (1.0 + x0i.norm()),
            ErrKind::pipeline, "left-torus commutator does not match its boundary");

    for (int k = 0; k < fn.genus - 2; ++k) {
      int pa = 2 * k + 1, pb = 2 * k + 2;
      int cL = 3 * k, cA = 3 * k + 1, cB = 3 * k + 2;
      phi[pa] = phi[D.gluings[cL].a.pants] * glue_of(cL);
      phi[pb] = phi[pa] * glue_of(cA);
      Mat2 X2 = phi[pa] * bdry_hol(pa, 2) * phi[pa].inverse();
      Mat2 Y1 = phi[pb] * bdry_hol(pb, 1) * phi[pb].inverse();
      Mat2 Y2 = phi[pb] * bdry_hol(pb, 2) * phi[pb].inverse();
      const auto& gB = D.gluings[cB];
      Mat2 t = phi[gB.a.pants] * glue_of(cB) * phi[gB.b.pants].inverse();
      // Incoming running == x0 of this piece; [X2, t^-1] = X2 Y1, and
      // x0 X2 Y1 telescopes to Y1^-1 Y2^-1 Y1 via the two hexagon relations.
      Mat2 B = t.inverse();
      running.comm(X2, B);
      s.generators.push_back(X2);
      s.generators.push_back(B);
      TrackedProduct expect;
      expect.mul(Mat2(Y1.inverse())).mul(Mat2(Y2.inverse())).mul(Y1);
      require(mat_err(running.p, expect.p) < running.tol() + expect.tol(), ErrKind::pipeline,
              "middle-piece telescope broke");
      // Rebase the remaining chain so the outgoing boundary is seen through
      // the same conjugation (same group, shifted lift).
      phi[pb] = Y1.inverse() * phi[pb];
    }

    // Right torus: last pants, handle glues slots (1,2).
    int pl = D.n_pants - 1;
    if (fn.genus == 2) {
      phi[pl] = phi[0] * glue_of(0);
    } else {
      int cR = 3 * (fn.genus - 2);
      phi[pl] = phi[D.gluings[cR].a.pants] * glue_of(cR);
    }
    const auto& gR = D.gluings[handleR];
    Mat2 tR = phi[gR.a.pants] * glue_of(handleR) * phi[gR.b.pants].inverse();
    Mat2 Ag = phi[pl] * bdry_hol(pl, 2) * phi[pl].inverse();
    s.generators.push_back(Ag);
    s.generators.push_back(tR);
    running.comm(Ag, tR);
    require(proj_id_err(running.p) < running.tol(), ErrKind::pipeline,
            "surface relation failed to close");

    for (int c = 0; c < nc; ++c) {
      const auto& g = D.gluings[c];
      s.curves[c] = {fn.lengths[c], phi[g.a.pants] * bdry_hol(g.a.pants, g.a.slot) *
                                        phi[g.a.pants].inverse()};
    }
  }

  require(int(s.generators.size()) == 2 * fn.genus, ErrKind::pipeline, "generator count mismatch");
  // det(m) = 1 evaluated as ad - bc loses eps ||m||^2 to cancellation.
  for (const auto& m : s.generators)
    require(std::abs(m.determinant() - 1.0) < 1e-10 + 1e-12 * m.squaredNorm(), ErrKind::pipeline,
            "generator not unimodular");
  ClosureCheck cc = relation_closure(s);
  require(cc.residual < cc.limit, ErrKind::pipeline, "commutator product is not the identity");
  return s;
}

ClosureCheck relation_closure(const FuchsianSurface& s) {
  TrackedProduct w;
  for (int i = 0; i + 1 < int(s.generators.size()); i += 2)
    w.comm(s.generators[i], s.generators[i + 1]);
  return {proj_id_err(w.p), w.tol()};
}

} // namespace lab::hyp
