#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "lab/errors.hpp"
#include "lab/mesh.hpp"

using namespace lab::hyp;

namespace {

struct MeshStats {
  int n_edges = 0;
  bool watertight = true;
  double worst_len_mismatch = 0.0;
  double area_sum = 0.0;
};

MeshStats audit(const Mesh& m) {
  MeshStats st;
  std::map<std::pair<int, int>, std::vector<double>> edges;
  for (const auto& t : m.tris) {
    for (int k = 0; k < 3; ++k) {
      int u = t.v[(k + 1) % 3], v = t.v[(k + 2) % 3];
      if (u > v) std::swap(u, v);
      edges[{u, v}].push_back(t.len[k]);
    }
    st.area_sum += triangle_area(t.len[0], t.len[1], t.len[2]);
  }
  st.n_edges = int(edges.size());
  for (const auto& [e, lens] : edges) {
    if (lens.size() != 2) st.watertight = false;
    for (const double l : lens)
      st.worst_len_mismatch = std::max(st.worst_len_mismatch, std::abs(l - lens[0]));
  }
  return st;
}

void check_mesh(const Mesh& m, int genus) {
  const MeshStats st = audit(m);
  CHECK(st.watertight);
  CHECK(st.worst_len_mismatch < 1e-7);
  // Closed surface: V - E + F = 2 - 2g.
  CHECK(m.n_vertices - st.n_edges + int(m.tris.size()) == 2 - 2 * genus);
  const double area = 4.0 * M_PI * (genus - 1);
  CHECK(std::abs(st.area_sum - area) < 1e-5 * area);
  CHECK(m.area == doctest::Approx(st.area_sum).epsilon(1e-12));
  double va = 0.0;
  for (double v : m.vertex_area) {
    CHECK(v > 0.0);
    va += v;
  }
  CHECK(va == doctest::Approx(m.area).epsilon(1e-10));
  CHECK(m.min_angle > 1e-5);
  CHECK(m.min_edge > 0.0);
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("fermi distance basics") {
  const double len = 1.7;
  // acosh near 1 only resolves sqrt(eps); coincident points land around 1e-8.
  CHECK(fermi_dist(0.4, 0.3, 0.4, 0.3, len) < 1e-7);
  CHECK(fermi_dist(0.2, 0.1, -0.5, 0.9, len) ==
        doctest::Approx(fermi_dist(-0.5, 0.9, 0.2, 0.1, len)).epsilon(1e-13));
  // On the core circle the metric is the geodesic arclength, minimized over
  // the wrap-around lift.
  CHECK(fermi_dist(0.0, 0.05, 0.0, len - 0.05, len) == doctest::Approx(0.1).epsilon(1e-12));
  // Pure height separation at equal arclength.
  CHECK(fermi_dist(0.7, 0.3, -0.2, 0.3, len) == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("thick theta mesh is watertight") {
  const Mesh& m = labtest::cached_mesh(labtest::thick_theta(), 0.3);
  check_mesh(m, 2);
  CHECK(m.h == 0.3);
  REQUIRE(m.grids.size() == 3);

  for (int c = 0; c < 3; ++c) {
    const auto circle = m.circle_vertices(c);
    REQUIRE(int(circle.size()) == m.grids[c].n_cols);
    for (std::size_t i = 1; i < circle.size(); ++i) CHECK(circle[i].first > circle[i - 1].first);
    for (const auto& [sigma, v] : circle) {
      CHECK(m.tag[v].kind == RegionKind::cylinder);
      CHECK(m.tag[v].curve == c);
      CHECK(m.tag[v].t == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(m.tag[v].sigma == doctest::Approx(sigma).epsilon(1e-14));
    }
  }

  // Structured-grid indexing agrees with the tags.
  const CurveGrid& g = m.grids[1];
  for (int r = 0; r < g.n_rows; r += 3)
    for (int c = 0; c < g.n_cols; c += 5) {
      const int v = m.grid_vertex(1, r, c);
      CHECK(m.tag[v].kind == RegionKind::cylinder);
      CHECK(m.tag[v].curve == 1);
      CHECK(m.tag[v].t == doctest::Approx(g.rows[r]).epsilon(1e-14));
    }
}

TEST_CASE("chain meshes are watertight at genus 2 and 3") {
  check_mesh(labtest::cached_mesh(labtest::chain_fn(2, {1.8, 2.0, 2.2}, {0.2, -0.5, 0.9}), 0.3),
             2);
  check_mesh(labtest::cached_mesh(
                 labtest::chain_fn(3, {1.8, 2.0, 2.2, 1.9, 2.1, 2.3}, {0.2, -0.5, 0.9, 0.0, 1.3, -0.7}),
                 0.3),
             3);
}

TEST_CASE("pinched theta mesh keeps a deep structured collar") {
  const Mesh& m = labtest::cached_mesh(labtest::pinched_theta(0.12), 0.12);
  check_mesh(m, 2);
  const CurveGrid& g = m.grids[0];
  CHECK(g.length == doctest::Approx(0.12).epsilon(1e-12));
  CHECK(g.w_above > 1.2);
  CHECK(g.w_below > 1.2);
}

TEST_CASE("mesh construction is deterministic") {
  const FuchsianSurface s = build_surface(labtest::thick_theta());
  const Mesh m1 = build_mesh(s, 0.3);
  const Mesh m2 = build_mesh(s, 0.3);
  REQUIRE(m1.n_vertices == m2.n_vertices);
  REQUIRE(m1.tris.size() == m2.tris.size());
  for (std::size_t i = 0; i < m1.tris.size(); ++i)
    for (int k = 0; k < 3; ++k) {
      CHECK(m1.tris[i].v[k] == m2.tris[i].v[k]);
      CHECK(m1.tris[i].len[k] == m2.tris[i].len[k]);
    }
}

TEST_CASE("a full twist is a Dehn twist: same mesh up to rounding") {
  const Mesh m1 = build_mesh(build_surface(labtest::theta_fn(1.9, 2.1, 2.3, 0.35, -0.6, 1.1)), 0.3);
  const Mesh m2 = build_mesh(
      build_surface(labtest::theta_fn(1.9, 2.1, 2.3, 0.35 + 2.0 * M_PI, -0.6, 1.1)), 0.3);
  REQUIRE(m1.n_vertices == m2.n_vertices);
  REQUIRE(m1.tris.size() == m2.tris.size());
  // theta + 2 pi is the same FN point, but fl(theta + 2 pi) is not exactly
  // theta, so edge lengths agree only to the perturbation it seeds.
  for (std::size_t i = 0; i < m1.tris.size(); ++i)
    for (int k = 0; k < 3; ++k) {
      CHECK(m1.tris[i].v[k] == m2.tris[i].v[k]);
      CHECK(m1.tris[i].len[k] == doctest::Approx(m2.tris[i].len[k]).epsilon(1e-9));
    }
}

TEST_CASE("unmeshable requests fail loudly") {
  const FuchsianSurface s = build_surface(labtest::thick_theta());
  CHECK_THROWS_AS(build_mesh(s, -0.1), lab::Error);
  CHECK_THROWS_AS(build_mesh(s, 0.0), lab::Error);
}

}  // TEST_SUITE
