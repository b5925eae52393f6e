#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "lab/rng.hpp"
#include "lab/simd.hpp"

using lab::simd::Kernels;

namespace {

std::vector<double> random_vec(std::size_t n, double lo, double hi, std::uint64_t idx) {
  lab::rng::Stream s(314159, lab::rng::mod_test, idx);
  std::vector<double> v(n);
  for (auto& x : v) x = lo + (hi - lo) * s.u01();
  return v;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("active table is coherent with the force hook") {
  const Kernels& k0 = lab::simd::active();
  CHECK((std::string(k0.name) == "avx2" || std::string(k0.name) == "scalar"));
  CHECK((lab::simd::avx2_active() == (std::string(k0.name) == "avx2")));

  lab::simd::force_scalar(true);
  CHECK(std::string(lab::simd::active().name) == "scalar");
  lab::simd::force_scalar(false);
  CHECK(std::string(lab::simd::active().name) == k0.name);
}

TEST_CASE("variants agree on every entry point") {
  const Kernels& ref = lab::simd::scalar_kernels();
  const Kernels& act = lab::simd::active();
  for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(3), std::size_t(4),
                        std::size_t(7), std::size_t(8), std::size_t(9), std::size_t(31),
                        std::size_t(33), std::size_t(1000), std::size_t(1003)}) {
    const auto x = random_vec(n, -3.0, 3.0, 2 * n);
    const auto y = random_vec(n, -2.0, 2.0, 2 * n + 1);

    const double s1 = ref.sum(x.data(), n);
    const double s2 = act.sum(x.data(), n);
    CHECK(std::abs(s1 - s2) <= 1e-13 * (1.0 + std::abs(s1)));

    const double d1 = ref.dot(x.data(), y.data(), n);
    const double d2 = act.dot(x.data(), y.data(), n);
    CHECK(std::abs(d1 - d2) <= 1e-13 * (1.0 + std::abs(d1)));

    std::vector<double> ya(y), yb(y);
    ref.axpy(1.7, x.data(), ya.data(), n);
    act.axpy(1.7, x.data(), yb.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(ya[i] - yb[i]) <= 1e-14 * (1.0 + std::abs(ya[i])));

    std::vector<double> oa(n), ob(n);
    ref.exp_scale(x.data(), 2.0, -0.3, y.data(), oa.data(), n);
    act.exp_scale(x.data(), 2.0, -0.3, y.data(), ob.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(oa[i] - ob[i]) <= 1e-13 * std::abs(oa[i]) + 1e-300);

    const double e1 = ref.sum_exp(x.data(), -1.1, 0.25, n);
    const double e2 = act.sum_exp(x.data(), -1.1, 0.25, n);
    CHECK(std::abs(e1 - e2) <= 1e-13 * (1.0 + std::abs(e1)));
  }
}

TEST_CASE("exp kernel tracks std::exp over the working range") {
  const Kernels& act = lab::simd::active();
  std::vector<double> x;
  for (double t = -600.0; t <= 600.0; t += 7.3) x.push_back(t);
  std::vector<double> out(x.size());
  act.exp_scale(x.data(), 1.0, 0.0, nullptr, out.data(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = std::exp(x[i]);
    CHECK(std::abs(out[i] - e) <= 1e-13 * e);
  }
}

TEST_CASE("null scale pointer means ones") {
  const Kernels& act = lab::simd::active();
  const auto x = random_vec(257, -5.0, 5.0, 77);
  std::vector<double> ones(x.size(), 1.0), a(x.size()), b(x.size());
  act.exp_scale(x.data(), 0.7, 0.1, nullptr, a.data(), x.size());
  act.exp_scale(x.data(), 0.7, 0.1, ones.data(), b.data(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(a[i] == b[i]);
}

}  // TEST_SUITE
