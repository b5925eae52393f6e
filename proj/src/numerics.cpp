#include "lab/numerics.hpp"
#include "lab/errors.hpp"
#include "lab/simd.hpp"
#include <algorithm>
#include <cmath>

namespace lab::num {

double mean(const std::vector<double>& x) {
  require(!x.empty(), ErrKind::domain, "mean of empty vector");
  return simd::active().sum(x.data(), x.size()) / double(x.size());
}

double variance(const std::vector<double>& x) {
  require(x.size() >= 2, ErrKind::domain, "variance needs n >= 2");
  double m = mean(x);
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - m;
  double ss = simd::active().dot(d.data(), d.data(), d.size());
  return ss / double(x.size() - 1);
}

double stderr_mean(const std::vector<double>& x) {
  return std::sqrt(variance(x) / double(x.size()));
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrKind::domain, "fit_line needs matched n >= 2");
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0, ErrKind::domain, "fit_line: degenerate x");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
  }
  f.r2 = (syy > 0) ? 1.0 - ss_res / syy : 1.0;
  f.slope_stderr = (n > 2) ? std::sqrt(ss_res / double(n - 2) / sxx) : 0.0;
  return f;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrKind::domain, "trapezoid needs matched n >= 2");
  double s = 0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

namespace {
double neg_moment_of(const double* m, std::size_t n, double q, int n_nodes, double m_lo, double m_hi,
                     double m_bar) {
  // Analytic head below t_lo (E[e^{-tM}] ~ 1 - t E[M]), log-grid trapezoid above.
  const double t_lo = 1e-6 / m_hi;
  const double t_hi = (q + 45.0) / m_lo;
  const double s_lo = std::log(t_lo), s_hi = std::log(t_hi);
  double head = std::pow(t_lo, q) / q - m_bar * std::pow(t_lo, q + 1.0) / (q + 1.0);
  std::vector<double> s(n_nodes), f(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    s[i] = s_lo + (s_hi - s_lo) * double(i) / double(n_nodes - 1);
    double t = std::exp(s[i]);
    double lap = simd::active().sum_exp(m, -t, 0.0, n) / double(n);
    f[i] = std::exp(q * s[i]) * lap;
  }
  double tail = trapezoid(s, f);
  return (head + tail) / std::tgamma(q);
}
} // namespace

NegMoment neg_moment(const std::vector<double>& samples, double q, int n_nodes, int n_batches) {
  require(q > 0, ErrKind::domain, "neg_moment: q must be positive");
  require(samples.size() >= std::size_t(2 * n_batches), ErrKind::domain, "neg_moment: too few samples");
  double m_lo = *std::min_element(samples.begin(), samples.end());
  double m_hi = *std::max_element(samples.begin(), samples.end());
  require(m_lo > 0, ErrKind::domain, "neg_moment: samples must be positive");
  double m_bar = mean(samples);
  NegMoment r;
  r.value = neg_moment_of(samples.data(), samples.size(), q, n_nodes, m_lo, m_hi, m_bar);
  // Batch means over contiguous groups in sample order.
  std::vector<double> b;
  std::size_t per = samples.size() / n_batches;
  for (int k = 0; k < n_batches; ++k) {
    const double* p = samples.data() + std::size_t(k) * per;
    b.push_back(neg_moment_of(p, per, q, n_nodes, m_lo, m_hi, m_bar));
  }
  r.stderr_value = std::sqrt(variance(b) / double(n_batches));
  return r;
}

std::vector<double> brownian_bridge(const std::vector<double>& times, const std::vector<double>& normals) {
  require(times.size() == normals.size(), ErrKind::domain, "bridge: times/normals mismatch");
  std::vector<double> b(times.size());
  double t_prev = 0.0, b_prev = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    double t = times[i];
    require(t > t_prev && t < 1.0, ErrKind::domain, "bridge: times must be strictly increasing in (0,1)");
    double mean_i = b_prev * (1.0 - t) / (1.0 - t_prev);
    double var_i = (t - t_prev) * (1.0 - t) / (1.0 - t_prev);
    b[i] = mean_i + std::sqrt(var_i) * normals[i];
    t_prev = t;
    b_prev = b[i];
  }
  return b;
}

} // namespace lab::num
