#include "lab/surface.hpp"
#include "lab/errors.hpp"

namespace lab::hyp {

double triangle_angle(double a, double b, double c) {
  // angle at the vertex between sides a and b, opposite c
  double q = (std::cosh(a) * std::cosh(b) - std::cosh(c)) / (std::sinh(a) * std::sinh(b));
  if (q > 1.0) q = 1.0;
  if (q < -1.0) q = -1.0;
  return std::acos(q);
}

double triangle_area(double a, double b, double c) {
  double A = triangle_angle(b, c, a);
  double B = triangle_angle(c, a, b);
  double C = triangle_angle(a, b, c);
  double defect = M_PI - A - B - C;
  return defect > 0.0 ? defect : 0.0;
}

FenchelNielsen::Pattern pattern_from_string(const std::string& s) {
  if (s == "chain") return FenchelNielsen::Pattern::chain;
  if (s == "theta") return FenchelNielsen::Pattern::theta;
  fail(ErrKind::config, "unknown gluing pattern: " + s);
}

PantsDecomposition decomposition(int genus, FenchelNielsen::Pattern pattern) {
  require(genus >= 2, ErrKind::domain, "genus must be >= 2");
  PantsDecomposition d;
  d.genus = genus;
  d.n_pants = 2 * genus - 2;
  d.curve_of.assign(d.n_pants, {-1, -1, -1});
  if (pattern == FenchelNielsen::Pattern::theta) {
    require(genus == 2, ErrKind::domain, "theta pattern is genus-2 only");
    d.curve_of[0] = {0, 1, 2};
    d.curve_of[1] = {0, 1, 2};
    d.gluings = {{0, {0, 0}, {1, 0}}, {1, {0, 1}, {1, 1}}, {2, {0, 2}, {1, 2}}};
    return d;
  }
  // Chain: pants 0 = left end (handle on slots 1,2; connector slot 0);
  // middles come in pairs (2k-1, 2k) joined along two curves; last pants =
  // right end. Curve numbering: 0 = first connector (separating at genus 2),
  // then for each middle [pair curve A, pair curve B, next connector], then
  // the two handle curves last.
  int nc = 3 * genus - 3;
  d.gluings.resize(nc);
  int handleL = nc - 2, handleR = nc - 1;
  d.curve_of[0] = {0, handleL, handleL};
  d.gluings[handleL] = {handleL, {0, 1}, {0, 2}};
  int last = d.n_pants - 1;
  d.curve_of[last] = {3 * (genus - 2), handleR, handleR};
  d.gluings[handleR] = {handleR, {last, 1}, {last, 2}};
  d.gluings[0] = {0, {0, 0}, {1, 0}};
  for (int k = 0; k < genus - 2; ++k) {
    int pa = 2 * k + 1, pb = 2 * k + 2;
    int cL = 3 * k;            // incoming connector
    int cA = 3 * k + 1;        // middle pair curve A
    int cB = 3 * k + 2;        // middle pair curve B
    int cR = 3 * (k + 1);      // outgoing connector
    d.curve_of[pa] = {cL, cA, cB};
    d.curve_of[pb] = {cA, cB, cR};
    d.gluings[cA] = {cA, {pa, 1}, {pb, 0}};
    d.gluings[cB] = {cB, {pa, 2}, {pb, 1}};
    d.gluings[cR] = {cR, {pb, 2}, {pb + 1, 0}};
  }
  return d;
}

PantsGeometry build_pants(double l0, double l1, double l2) {
  require(l0 > 0 && l1 > 0 && l2 > 0, ErrKind::domain, "pants boundary lengths must be positive");
  PantsGeometry p;
  p.bdry_len = {l0, l1, l2};
  double a[3] = {0.5 * l0, 0.5 * l1, 0.5 * l2};
  // Right-angled hexagon with alternating sides a0, s2, a1, s0, a2, s1:
  // cosh s_k = (cosh a_k + cosh a_i cosh a_j) / (sinh a_i sinh a_j).
  for (int k = 0; k < 3; ++k) {
    int i = (k + 1) % 3, j = (k + 2) % 3;
    double q = (std::cosh(a[k]) + std::cosh(a[i]) * std::cosh(a[j])) /
               (std::sinh(a[i]) * std::sinh(a[j]));
    p.seam_len[k] = std::acosh(q);
  }
  // Walk the hexagon: sides in order [a0, s2, a1, s0, a2, s1], 90-degree
  // turns. Hexagon 0 turns one way, hexagon 1 the other (mirror copy).
  double side_len[6] = {a[0], p.seam_len[2], a[1], p.seam_len[0], a[2], p.seam_len[1]};
  for (int hex = 0; hex < 2; ++hex) {
    double turn = (hex == 0) ? 0.5 * M_PI : -0.5 * M_PI;
    Mat2 f = Mat2::Identity();
    for (int s = 0; s < 6; ++s) {
      p.corner[hex][s] = frame_point(f);
      if (s == 0) p.side_frame[hex][0] = f;
      if (s == 2) p.side_frame[hex][1] = f;
      if (s == 4) p.side_frame[hex][2] = f;
      if (s == 1) p.seam_frame[hex][2] = f;
      if (s == 3) p.seam_frame[hex][0] = f;
      if (s == 5) p.seam_frame[hex][1] = f;
      f = f * translate(side_len[s]) * rotate(turn);
    }
    // Closure: the walk must return to the start frame (up to sign).
    cplx back = frame_point(f);
    require(std::abs(back - cplx(0.0, 1.0)) < 1e-8, ErrKind::domain,
            "hexagon walk did not close; degenerate pants data");
  }
  return p;
}

Collar collar(const FuchsianSurface& s, int curve) {
  require(curve >= 0 && curve < int(s.fn.lengths.size()), ErrKind::domain, "collar: bad curve index");
  Collar c;
  c.curve = curve;
  c.length = s.fn.lengths[curve];
  c.half_width = std::asinh(1.0 / std::sinh(c.length));
  return c;
}

double geodesic_length(const Mat2& w) { return translation_length(w); }

} // namespace lab::hyp
