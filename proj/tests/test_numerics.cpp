#include <cmath>
#include <vector>

#include "doctest.h"
#include "lab/numerics.hpp"
#include "lab/rng.hpp"

namespace num = lab::num;

TEST_SUITE("numerics") {

TEST_CASE("moments of a small hand-checked sample") {
  const std::vector<double> x{1.0, 2.0, 4.0, 9.0};  // mean 4, var (9+4+0+25)*... = 38/3
  CHECK(num::mean(x) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(num::variance(x) == doctest::Approx(38.0 / 3.0).epsilon(1e-14));
  CHECK(num::stderr_mean(x) == doctest::Approx(std::sqrt(38.0 / 3.0 / 4.0)).epsilon(1e-14));
}

TEST_CASE("line fit recovers an exact line") {
  std::vector<double> xs, ys;
  for (int i = 0; i < 7; ++i) {
    xs.push_back(0.3 * i - 1.0);
    ys.push_back(3.0 - 2.0 * xs.back());
  }
  const auto f = num::fit_line(xs, ys);
  CHECK(f.slope == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(f.intercept == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.slope_stderr < 1e-12);
}

TEST_CASE("trapezoid is exact on a linear integrand") {
  const std::vector<double> x{0.0, 0.4, 1.0, 1.3, 2.0};
  std::vector<double> y;
  for (double t : x) y.push_back(5.0 - 3.0 * t);
  // integral of 5 - 3t on [0,2] = 10 - 6 = 4
  CHECK(num::trapezoid(x, y) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("brownian bridge has the exact covariance") {
  const std::vector<double> times{0.25, 0.5, 0.75};
  const int n = 200000;
  lab::rng::Stream s(99, lab::rng::mod_test, 5);
  double c13 = 0.0, v2 = 0.0, m1 = 0.0, m3 = 0.0;
  for (int i = 0; i < n; ++i) {
    std::vector<double> z{s.normal(), s.normal(), s.normal()};
    const auto b = num::brownian_bridge(times, z);
    c13 += b[0] * b[2];
    v2 += b[1] * b[1];
    m1 += b[0];
    m3 += b[2];
  }
  c13 /= n;
  v2 /= n;
  m1 /= n;
  m3 /= n;
  // Cov(B_s, B_t) = s (1 - t) for s <= t.
  CHECK(std::abs(m1) < 2e-3);
  CHECK(std::abs(m3) < 2e-3);
  CHECK(std::abs(v2 - 0.25) < 3.5e-3);
  CHECK(std::abs(c13 - 0.25 * 0.25) < 2.5e-3);
}

TEST_CASE("negative moment matches the lognormal closed form") {
  // M = exp(sigma Z + m): E[M^{-q}] = exp(-q m + q^2 sigma^2 / 2).
  const double sigma = 0.4, m = -0.3, q = 2.5;
  const int n = 50000;
  lab::rng::Stream s(123, lab::rng::mod_test, 9);
  std::vector<double> samples(n);
  double direct = 0.0;
  for (auto& v : samples) {
    v = std::exp(sigma * s.normal() + m);
    direct += std::pow(v, -q);
  }
  direct /= n;

  const auto nm = num::neg_moment(samples, q);
  const double exact = std::exp(-q * m + 0.5 * q * q * sigma * sigma);

  // The quadrature evaluates the same sample functional as the direct mean;
  // only node density separates them.
  CHECK(std::abs(nm.value - direct) < 2e-3 * direct);
  CHECK(nm.stderr_value > 0.0);
  CHECK(std::abs(nm.value - exact) < std::max(5.0 * nm.stderr_value, 0.05 * exact));
}

TEST_CASE("negative moment rejects empty or nonpositive input") {
  CHECK_THROWS(num::neg_moment({}, 1.0));
  CHECK_THROWS(num::neg_moment({1.0, -2.0}, 1.0));
  CHECK_THROWS(num::neg_moment({1.0, 2.0}, 0.0));
}

}  // TEST_SUITE
