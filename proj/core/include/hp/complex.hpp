#pragma once

#include "hp/real.hpp"

namespace hp {

// Minimal complex type over hp::real.  std::complex requires its parameter
// to behave like a builtin float, which mpfr-backed values do not, so we
// carry our own.
struct complex {
  real re, im;

  complex() = default;
  complex(real r) : re(std::move(r)) {}
  complex(real r, real i) : re(std::move(r)), im(std::move(i)) {}
  complex(long r) : re(r) {}
  complex(double r) : re(r) {}

  bool is_finite() const { return re.is_finite() && im.is_finite(); }

  complex operator-() const { return {-re, -im}; }

  friend complex operator+(const complex& a, const complex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend complex operator-(const complex& a, const complex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend complex operator*(const complex& a, const complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend complex operator*(const complex& a, const real& s) {
    return {a.re * s, a.im * s};
  }
  friend complex operator*(const real& s, const complex& a) { return a * s; }
  friend complex operator/(const complex& a, const real& s) {
    return {a.re / s, a.im / s};
  }
  friend complex operator/(const complex& a, const complex& b) {
    real d = sqr(b.re) + sqr(b.im);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend bool operator==(const complex& a, const complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline complex conj(const complex& z) { return {z.re, -z.im}; }
inline real abs(const complex& z) { return hypot(z.re, z.im); }
inline real norm2(const complex& z) { return sqr(z.re) + sqr(z.im); }
inline real arg(const complex& z) { return atan2(z.im, z.re); }

// Principal square root (branch cut on the negative real axis).  The
// half-angle formula is applied on whichever side avoids cancellation.
inline complex sqrt(const complex& z) {
  if (z.im.is_zero()) {
    if (z.re.sgn() >= 0) return {sqrt(z.re), real(0L)};
    return {real(0L), sqrt(-z.re)};
  }
  real r = abs(z);
  if (z.re.sgn() >= 0) {
    real u = sqrt((r + z.re).mul_2si(-1));
    return {u, z.im / u.mul_2si(1)};
  }
  real v = sqrt((r - z.re).mul_2si(-1));
  if (z.im.sgn() < 0) v = -v;
  return {z.im / v.mul_2si(1), v};
}

}  // namespace hp
