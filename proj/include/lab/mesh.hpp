#pragma once
#include "lab/surface.hpp"
#include <array>
#include <utility>
#include <vector>

namespace lab::hyp {

// Geodesic triangle mesh of a closed hyperbolic surface, carried entirely by
// edge lengths (intrinsic; no global embedding exists). Vertices are tagged
// by region: structured Fermi grids on the collar cylinders around each
// pants curve, ring-fan cores for the rest of each hexagon.
struct MeshTri {
  std::array<int, 3> v;
  std::array<double, 3> len; // len[k] = length of the edge opposite v[k]
};

enum class RegionKind { core, cylinder };

struct RegionTag {
  RegionKind kind = RegionKind::core;
  int pants = -1;
  int hex = -1;   // -1 for cylinder vertices and shared seam vertices
  int curve = -1; // cylinder only
  double t = 0.0;     // cylinder only: signed Fermi height (positive = a-side)
  double sigma = 0.0; // cylinder only: circle arclength in [0, length)
};

// Structured grid over one curve's collar cylinder. Vertex ids are
// first_vertex + row * n_cols + col; rows ascend in t from -w_below to
// w_above with t = 0 at row_zero.
struct CurveGrid {
  int curve = 0;
  double length = 0.0;
  double w_above = 0.0, w_below = 0.0;
  std::vector<double> cols; // circle arclength of each column (a-side chart)
  std::vector<double> rows; // t of each row
  int first_vertex = 0;
  int n_cols = 0, n_rows = 0, row_zero = 0;
  // column indices of the hexagon-corner columns: [sigma_side = 0, = l/2]
  std::array<int, 2> corner_above{-1, -1};
  std::array<int, 2> corner_below{-1, -1};
};

struct Mesh {
  int genus = 0;
  int n_vertices = 0;
  double h = 0.0; // target edge length the mesh was built with
  std::vector<MeshTri> tris;
  std::vector<RegionTag> tag;
  std::vector<double> vertex_area; // barycentric thirds, sums to area
  double area = 0.0;
  std::vector<CurveGrid> grids; // indexed by curve
  int n_edges = 0;
  double min_edge = 0.0;
  double min_angle = 0.0;

  int grid_vertex(int curve, int row, int col) const {
    const CurveGrid& g = grids[curve];
    return g.first_vertex + row * g.n_cols + col;
  }
  // vertices on the curve's central geodesic circle, (sigma, vertex id)
  std::vector<std::pair<double, int>> circle_vertices(int curve) const;
};

// Fermi-coordinate distance on a hyperbolic cylinder of core length `len`:
// signed heights t, arclengths s along the core, minimized over the two
// angular lifts. cosh d = cosh t cosh t' cosh(ds) - sinh t sinh t'.
double fermi_dist(double t0, double s0, double t1, double s1, double len);

// Target edge length h > 0; smaller h refines. Throws ErrKind::mesh when the
// requested geometry cannot be meshed watertight.
Mesh build_mesh(const FuchsianSurface& s, double h);

} // namespace lab::hyp
