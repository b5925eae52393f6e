#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "lab/sl2.hpp"
#include "lab/surface.hpp"

using namespace lab::hyp;

namespace {

// Right-angled hexagon side relation: alternating sides a0 s2 a1 s0 a2 s1
// with cosh s_k = (cosh a_k + cosh a_{k+1} cosh a_{k+2}) / (sinh a_{k+1} sinh a_{k+2}).
double hexagon_seam(double ak, double ak1, double ak2) {
  return std::acosh((std::cosh(ak) + std::cosh(ak1) * std::cosh(ak2)) /
                    (std::sinh(ak1) * std::sinh(ak2)));
}

Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b * a.inverse() * b.inverse(); }

double dist_to_pm_identity(const Mat2& m) {
  const Mat2 p = m - Mat2::Identity();
  const Mat2 q = m + Mat2::Identity();
  return std::min(p.cwiseAbs().maxCoeff(), q.cwiseAbs().maxCoeff());
}

}  // namespace

TEST_SUITE("hyp") {

TEST_CASE("sl2 primitives") {
  const Mat2 t = translate(0.8);
  CHECK(t.determinant() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rotate(0.6).determinant() == doctest::Approx(1.0).epsilon(1e-14));

  const cplx p = frame_point(t);
  CHECK(p.real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p.imag() == doctest::Approx(std::exp(0.8)).epsilon(1e-13));
  CHECK(dist_h(cplx(0, 1), p) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(translation_length(t) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(displacement(rotate(1.1)) == doctest::Approx(0.0).epsilon(1e-12));

  // Klein chart preserves distances.
  const cplx z(0.3, 1.4), w(-0.2, 0.5);
  CHECK(dist_klein(to_klein(z), to_klein(w)) == doctest::Approx(dist_h(z, w)).epsilon(1e-11));
  CHECK(to_klein(cplx(0, 1)).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("triangle relations") {
  // Near-degenerate small triangle approaches the Euclidean equilateral angle.
  CHECK(triangle_angle(0.01, 0.01, 0.01) == doctest::Approx(M_PI / 3.0).epsilon(1e-3));
  // Hyperbolic Pythagoras: cosh c = cosh a cosh b gives a right angle.
  const double a = 0.7, b = 1.1;
  const double c = std::acosh(std::cosh(a) * std::cosh(b));
  CHECK(triangle_angle(a, b, c) == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
  // Area is the angle defect.
  const double area = triangle_area(a, b, c);
  const double defect = M_PI - triangle_angle(a, b, c) - triangle_angle(b, c, a) -
                        triangle_angle(c, a, b);
  CHECK(area == doctest::Approx(defect).epsilon(1e-12));
}

TEST_CASE("pants hexagons close with the right-angled relations") {
  const double l0 = 1.0, l1 = 1.1, l2 = 0.9;
  const PantsGeometry pg = build_pants(l0, l1, l2);
  const std::array<double, 3> a{l0 / 2, l1 / 2, l2 / 2};
  for (int k = 0; k < 3; ++k) {
    const double expect = hexagon_seam(a[k], a[(k + 1) % 3], a[(k + 2) % 3]);
    CHECK(pg.seam_len[k] == doctest::Approx(expect).epsilon(1e-10));
    CHECK(pg.bdry_len[k] == doctest::Approx(2.0 * a[k]).epsilon(1e-14));
  }

  // Walk order a0 s2 a1 s0 a2 s1: corner-to-corner distances must reproduce
  // the sides, and all corners are right angles.
  for (int h = 0; h < 2; ++h) {
    const auto& c = pg.corner[h];
    const double sides[6] = {a[0], pg.seam_len[2], a[1], pg.seam_len[0], a[2], pg.seam_len[1]};
    for (int i = 0; i < 6; ++i)
      CHECK(dist_h(c[i], c[(i + 1) % 6]) == doctest::Approx(sides[i]).epsilon(1e-9));
    for (int i = 0; i < 6; ++i) {
      const double d1 = dist_h(c[(i + 5) % 6], c[i]);
      const double d2 = dist_h(c[i], c[(i + 1) % 6]);
      const double dd = dist_h(c[(i + 5) % 6], c[(i + 1) % 6]);
      CHECK(triangle_angle(d1, d2, dd) == doctest::Approx(M_PI / 2.0).epsilon(1e-8));
    }
  }

  // Frames start at the corners and point along the sides.
  for (int h = 0; h < 2; ++h)
    for (int slot = 0; slot < 3; ++slot) {
      const cplx start = frame_point(pg.side_frame[h][slot]);
      bool found = false;
      for (int i = 0; i < 6; ++i)
        if (dist_h(start, pg.corner[h][i]) < 1e-9) found = true;
      CHECK(found);
    }
}

TEST_CASE("theta surface: traces, relation, area") {
  const FuchsianSurface s = build_surface(labtest::thick_theta());
  CHECK(s.area == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
  REQUIRE(s.curves.size() == 3);
  REQUIRE(s.generators.size() == 4);

  for (int c = 0; c < 3; ++c) {
    const double l = s.fn.lengths[c];
    CHECK(geodesic_length(s.curves[c].holonomy) == doctest::Approx(l).epsilon(1e-10));
    const Mat2& m = s.curves[c].holonomy;
    CHECK(std::abs(m.trace()) / (2.0 * std::sqrt(m.determinant())) ==
          doctest::Approx(std::cosh(l / 2)).epsilon(1e-10));
  }
  for (const Mat2& g : s.generators)
    CHECK(g.determinant() == doctest::Approx(1.0).epsilon(1e-9));

  const Mat2 rel = commutator(s.generators[0], s.generators[1]) *
                   commutator(s.generators[2], s.generators[3]);
  CHECK(dist_to_pm_identity(rel) < 1e-8);
}

TEST_CASE("chain surfaces close at genus 2, 3, 4") {
  struct Point {
    int genus;
    std::vector<double> lengths, twists;
  };
  const std::vector<Point> points{
      {2, {1.8, 2.0, 2.2}, {0.2, -0.5, 0.9}},
      {3, {1.8, 2.0, 2.2, 1.9, 2.1, 2.3}, {0.2, -0.5, 0.9, 0.0, 1.3, -0.7}},
      {4, {1.8, 2.0, 2.2, 1.9, 2.1, 2.3, 2.0, 1.7, 2.4}, {0.2, -0.5, 0.9, 0.0, 1.3, -0.7, 0.4, 0.0, -1.1}},
  };
  for (const auto& pt : points) {
    const FuchsianSurface s = build_surface(labtest::chain_fn(pt.genus, pt.lengths, pt.twists));
    CHECK(s.area == doctest::Approx(4.0 * M_PI * (pt.genus - 1)).epsilon(1e-12));
    REQUIRE(int(s.curves.size()) == 3 * pt.genus - 3);
    // Holonomies deep in the chain carry conjugators with norms up to e^seam
    // per pants crossed; the trace loses eps * norm to cancellation.
    for (std::size_t c = 0; c < s.curves.size(); ++c)
      CHECK(geodesic_length(s.curves[c].holonomy) ==
            doctest::Approx(pt.lengths[c]).epsilon(1e-9 + 2e-11 * s.curves[c].holonomy.norm()));

    const ClosureCheck cc = relation_closure(s);
    CHECK(cc.residual < cc.limit);
    // At genus 2 the word is short and thick, so closure is sharp.
    if (pt.genus == 2) CHECK(cc.residual < 1e-9);
  }
}

TEST_CASE("collar widths follow the normalized collar relation") {
  const FuchsianSurface s = build_surface(labtest::pinched_theta(0.1));
  const Collar c0 = collar(s, 0);
  CHECK(std::sinh(c0.half_width) * std::sinh(c0.length) == doctest::Approx(1.0).epsilon(1e-12));
  // Frozen value: asinh(1/sinh 0.1) = 2.9966...
  CHECK(c0.half_width == doctest::Approx(2.9966).epsilon(1e-3));
  const Collar c1 = collar(s, 1);
  CHECK(c1.half_width < c0.half_width);
}

TEST_CASE("full twists preserve curve traces") {
  const FuchsianSurface s1 = build_surface(labtest::theta_fn(1.9, 2.1, 2.3, 0.35, -0.6, 1.1));
  const FuchsianSurface s2 =
      build_surface(labtest::theta_fn(1.9, 2.1, 2.3, 0.35 + 2.0 * M_PI, -0.6, 1.1));
  for (int c = 0; c < 3; ++c)
    CHECK(geodesic_length(s2.curves[c].holonomy) ==
          doctest::Approx(geodesic_length(s1.curves[c].holonomy)).epsilon(1e-10));
}

}  // TEST_SUITE
