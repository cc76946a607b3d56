#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace splab {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 3;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Point of R^n for n <= 3; components past the dimension are zero.
using Vec = std::array<double, kMaxDim>;

inline double dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec scaled(const Vec& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

inline Vec operator+(const Vec& a, const Vec& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec operator-(const Vec& a, const Vec& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Zeroes the components past the first n.
inline Vec truncated(Vec a, int n) {
  for (int d = n; d < kMaxDim; ++d) a[d] = 0.0;
  return a;
}

// <x> = sqrt(1 + |x|^2)
inline double bracket(const Vec& x) { return std::sqrt(1.0 + dot(x, x)); }

}  // namespace splab
