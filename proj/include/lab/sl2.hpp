#pragma once
#include <Eigen/Core>
#include <Eigen/LU>
#include <cmath>
#include <complex>

// SL(2,R) acting on the upper half-plane, plus chart conversions.
// A "frame" is an SL2 matrix F encoding the unit tangent (F*i, dF(up));
// right-multiplication composes motions in the moving frame.
namespace lab::hyp {

using Mat2 = Eigen::Matrix2d;
using cplx = std::complex<double>;

inline Mat2 translate(double d) { // along the imaginary axis, i -> e^d i
  Mat2 m;
  m << std::exp(0.5 * d), 0.0, 0.0, std::exp(-0.5 * d);
  return m;
}

inline Mat2 rotate(double a) { // about i by angle a
  Mat2 m;
  m << std::cos(0.5 * a), std::sin(0.5 * a), -std::sin(0.5 * a), std::cos(0.5 * a);
  return m;
}

inline cplx mobius(const Mat2& m, cplx z) {
  return (m(0, 0) * z + m(0, 1)) / (m(1, 0) * z + m(1, 1));
}

inline cplx frame_point(const Mat2& f) { return mobius(f, cplx(0.0, 1.0)); }

inline double dist_h(cplx z, cplx w) {
  double num = std::norm(z - w);
  double den = 2.0 * z.imag() * w.imag();
  return std::acosh(1.0 + num / den);
}

// Signed translation length of a hyperbolic element, det-renormalized so that
// long products stay usable: l = 2 acosh(|tr|/(2 sqrt(det))).
inline double translation_length(const Mat2& m) {
  double dt = m.determinant();
  double t = std::abs(m.trace()) / (2.0 * std::sqrt(dt));
  return (t <= 1.0) ? 0.0 : 2.0 * std::acosh(t);
}

// Displacement of the base point i: cosh d = ||m||_F^2 / (2 det^{1/2}... ) for
// det-1 matrices cosh d(i, m i) = (a^2+b^2+c^2+d^2)/2.
inline double displacement(const Mat2& m) {
  double q = m.squaredNorm() / (2.0 * m.determinant());
  return (q <= 1.0) ? 0.0 : std::acosh(q);
}

// Upper half-plane -> Klein disk (through the Poincare disk).
inline Eigen::Vector2d to_klein(cplx z) {
  cplx w = (z - cplx(0, 1)) / (z + cplx(0, 1));
  double n = std::norm(w);
  return Eigen::Vector2d(2.0 * w.real() / (1.0 + n), 2.0 * w.imag() / (1.0 + n));
}

inline double dist_klein(const Eigen::Vector2d& x, const Eigen::Vector2d& y) {
  double num = 1.0 - x.dot(y);
  double den = std::sqrt((1.0 - x.squaredNorm()) * (1.0 - y.squaredNorm()));
  double q = num / den;
  return (q <= 1.0) ? 0.0 : std::acosh(q);
}

// Hyperbolic triangle area (angle defect) from side lengths.
double triangle_area(double a, double b, double c);
// Interior angle opposite side c.
double triangle_angle(double a, double b, double c);

} // namespace lab::hyp
