#pragma once
#include <cstddef>
#include <vector>

namespace lab::num {

double mean(const std::vector<double>& x);
double variance(const std::vector<double>& x); // unbiased, two-pass
double stderr_mean(const std::vector<double>& x);

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
  double slope_stderr = 0.0;
};
// Ordinary least squares y ~ a + b x. Requires n >= 2 distinct x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Trapezoid rule over an explicit grid.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

// E[M^{-q}] for q > 0 from samples of M > 0 via the Laplace identity
//   E[M^{-q}] = (1/Gamma(q)) int_0^inf t^{q-1} E[e^{-tM}] dt,
// evaluated on a log-t trapezoid grid spanning the sample range.
// Also returns a batch-means standard error (n_batches groups in sample order).
struct NegMoment {
  double value = 0.0;
  double stderr_value = 0.0;
};
NegMoment neg_moment(const std::vector<double>& samples, double q, int n_nodes = 600,
                     int n_batches = 10);

// Brownian bridge on [0,1] pinned to 0 at both ends, sampled sequentially at
// strictly increasing times; exact Gaussian conditional law (no Euler error).
// times must lie in (0,1); normals supplies one N(0,1) draw per time.
std::vector<double> brownian_bridge(const std::vector<double>& times, const std::vector<double>& normals);

} // namespace lab::num
