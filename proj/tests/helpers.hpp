#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>

#include "lab/mesh.hpp"
#include "lab/spectral.hpp"
#include "lab/surface.hpp"

// Shared fixtures. Meshes and spectra are cached per parameter set so the
// slow suites pay for each build once per test-binary run.
namespace labtest {

inline lab::hyp::FenchelNielsen theta_fn(double l0, double l1, double l2, double t0, double t1,
                                         double t2) {
  lab::hyp::FenchelNielsen fn;
  fn.genus = 2;
  fn.pattern = lab::hyp::FenchelNielsen::Pattern::theta;
  fn.lengths = {l0, l1, l2};
  fn.twists = {t0, t1, t2};
  return fn;
}

inline lab::hyp::FenchelNielsen chain_fn(int genus, std::vector<double> lengths,
                                         std::vector<double> twists) {
  lab::hyp::FenchelNielsen fn;
  fn.genus = genus;
  fn.pattern = lab::hyp::FenchelNielsen::Pattern::chain;
  fn.lengths = std::move(lengths);
  fn.twists = std::move(twists);
  return fn;
}

// The workhorse thick genus-2 point (theta pattern, systole ~ 1.9).
inline lab::hyp::FenchelNielsen thick_theta() {
  return theta_fn(1.9, 2.1, 2.3, 0.35, -0.6, 1.1);
}

// Thick point with a short pants curve 0 (deep collar).
inline lab::hyp::FenchelNielsen pinched_theta(double l0) {
  return theta_fn(l0, 2.0, 2.1, 0.0, 0.4, -0.8);
}

inline const lab::hyp::Mesh& cached_mesh(const lab::hyp::FenchelNielsen& fn, double h) {
  using Key = std::tuple<int, int, std::string, double>;
  static std::map<Key, std::unique_ptr<lab::hyp::Mesh>> cache;
  std::string knobs;
  for (double v : fn.lengths) knobs += std::to_string(v) + ",";
  for (double v : fn.twists) knobs += std::to_string(v) + ",";
  Key key{fn.genus, static_cast<int>(fn.pattern), knobs, h};
  auto it = cache.find(key);
  if (it == cache.end()) {
    const lab::hyp::FuchsianSurface s = lab::hyp::build_surface(fn);
    it = cache.emplace(key, std::make_unique<lab::hyp::Mesh>(lab::hyp::build_mesh(s, h))).first;
  }
  return *it->second;
}

struct SpectralData {
  lab::spec::LaplaceOp op;
  lab::spec::Spectrum spectrum;
};

// n_modes <= 0 requests the complete discrete spectrum (forces the dense path).
inline const SpectralData& cached_spectrum(const lab::hyp::FenchelNielsen& fn, double h,
                                           int n_modes,
                                           lab::spec::EigMethod method = lab::spec::EigMethod::automatic) {
  using Key = std::tuple<int, int, std::string, double, int, int>;
  static std::map<Key, std::unique_ptr<SpectralData>> cache;
  std::string knobs;
  for (double v : fn.lengths) knobs += std::to_string(v) + ",";
  for (double v : fn.twists) knobs += std::to_string(v) + ",";
  Key key{fn.genus, static_cast<int>(fn.pattern), knobs, h, n_modes, static_cast<int>(method)};
  auto it = cache.find(key);
  if (it == cache.end()) {
    const lab::hyp::Mesh& mesh = cached_mesh(fn, h);
    auto data = std::make_unique<SpectralData>();
    data->op = lab::spec::build_laplacian(mesh);
    const int m = n_modes <= 0 ? mesh.n_vertices : n_modes;
    const auto meth = n_modes <= 0 ? lab::spec::EigMethod::dense : method;
    data->spectrum = lab::spec::eigensolve(data->op, m, meth);
    it = cache.emplace(key, std::move(data)).first;
  }
  return *it->second;
}

}  // namespace labtest
