#pragma once
#include "lab/sl2.hpp"
#include <array>
#include <string>
#include <vector>

namespace lab::hyp {

// Fenchel-Nielsen chart point on the moduli of genus >= 2 closed hyperbolic
// surfaces: 3g-3 pants-curve lengths and twists, plus the gluing pattern.
//  - chain: dumbbell ends (one-holed tori) joined through two-holed-torus
//    middles; curve 0 separates at genus 2. Works for every genus >= 2.
//  - theta: genus 2 only, two pants glued along all three curves.
struct FenchelNielsen {
  int genus = 2;
  std::vector<double> lengths;
  std::vector<double> twists;
  enum class Pattern { chain, theta } pattern = Pattern::chain;
};

FenchelNielsen::Pattern pattern_from_string(const std::string& s);

// Combinatorics of the decomposition: which pants slot lies on which curve.
struct PantsDecomposition {
  struct End {
    int pants;
    int slot; // 0..2
  };
  struct Gluing {
    int curve;
    End a, b; // a = "left"/outer side; handle gluings have a.pants == b.pants
  };
  int genus = 0;
  int n_pants = 0;
  std::vector<std::array<int, 3>> curve_of; // [pants][slot] -> curve
  std::vector<Gluing> gluings;              // one per curve, index == curve
};

PantsDecomposition decomposition(int genus, FenchelNielsen::Pattern pattern);

// One pair of pants: boundary half-lengths, seam lengths, and the two
// right-angled hexagons embedded in the upper half-plane as SL2 frames.
struct PantsGeometry {
  std::array<double, 3> bdry_len;  // full boundary lengths by slot
  std::array<double, 3> seam_len;  // seam_len[k] joins boundaries (k+1, k+2) mod 3
  // side_frame[hex][slot]: frame at the start of hexagon side for boundary
  // `slot`, pointing along the side; hex 0 counterclockwise, hex 1 mirrored.
  std::array<std::array<Mat2, 3>, 2> side_frame;
  // seam_frame[hex][k]: frame at the start of seam k, pointing along it.
  // Seam k runs from its foot on boundary (k+1) mod 3 (at side parameter a)
  // to its foot on boundary (k+2) mod 3 (at side parameter 0).
  std::array<std::array<Mat2, 3>, 2> seam_frame;
  // corner[hex][v]: hexagon vertices, v = 0..5 in walk order
  std::array<std::array<cplx, 6>, 2> corner;
};

PantsGeometry build_pants(double l0, double l1, double l2);

struct CurveInfo {
  double length = 0.0; // FN input length
  Mat2 holonomy;       // a global representative of the curve's class
};

struct FuchsianSurface {
  FenchelNielsen fn;
  PantsDecomposition decomp;
  std::vector<PantsGeometry> pants;
  double area = 0.0;            // 4 pi (genus - 1)
  std::vector<Mat2> generators; // 2g, standard presentation [a1,b1]...[ag,bg] = 1
  std::vector<CurveInfo> curves;
};

FuchsianSurface build_surface(const FenchelNielsen& fn);

// Residual of prod_k [a_k, b_k] against +-id, together with the resolution
// limit of its own floating evaluation. Generator norms grow like e^seam, so
// the word cancels catastrophically; residual <= limit is the strongest
// closure statement double precision supports at that point of moduli space.
struct ClosureCheck {
  double residual = 0.0;
  double limit = 0.0;
};
ClosureCheck relation_closure(const FuchsianSurface& s);

// Maximal embedded collar around a pants curve: sinh(w) sinh(l/2)... the
// half-width w solves sinh(w) sinh(l) = 1 for the normalized chart used here.
struct Collar {
  int curve = 0;
  double length = 0.0;
  double half_width = 0.0;
};
Collar collar(const FuchsianSurface& s, int curve);

double geodesic_length(const Mat2& w); // 2 acosh(|tr|/2), det-renormalized

} // namespace lab::hyp
