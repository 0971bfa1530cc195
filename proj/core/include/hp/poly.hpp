#pragma once

#include <vector>

#include "hp/complex.hpp"
#include "hp/real.hpp"

namespace hp {

// Dense real-coefficient polynomial, coefficients in ascending degree.
// An empty coefficient vector is the zero polynomial.
class poly {
 public:
  poly() = default;
  explicit poly(std::vector<real> coeffs) : c_(std::move(coeffs)) {}
  static poly constant(real v) { return poly({std::move(v)}); }
  static poly identity() { return poly({real(0L), real(1L)}); }  // p(x) = x

  const std::vector<real>& coeffs() const { return c_; }
  std::vector<real>& coeffs() { return c_; }
  bool is_zero() const;

  // Degree after dropping a trailing run of exact zeros; -1 for zero poly.
  long degree() const;
  // Degree ignoring trailing coefficients below 2^rel_bits * max|coeff|.
  long degree(long rel_bits) const;

  const real& leading() const;
  real eval(const real& x) const;
  complex eval(const complex& z) const;
  poly derivative() const;

  poly operator+(const poly& o) const;
  poly operator-(const poly& o) const;
  poly operator*(const poly& o) const;
  poly operator*(const real& s) const;

  // max |coefficient|
  real coeff_norm() const;

 private:
  std::vector<real> c_;
};

// Monic polynomial with the given roots, expanded by repeated
// multiplication with (x - r).
poly monic_expand(const std::vector<real>& roots);

}  // namespace hp
