#pragma once

#include <gmp.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "hp/real.hpp"

namespace hp {

// Exact rational arithmetic over GMP's mpq.  This backs the exact solve
// path used to cross-check the floating null-space extraction on small
// systems with rationalized inputs.
class rat {
 public:
  rat() { mpq_init(v_); }
  rat(long num, long den = 1) {
    mpq_init(v_);
    mpq_set_si(v_, num, static_cast<unsigned long>(den > 0 ? den : -den));
    if (den < 0) mpq_neg(v_, v_);
    mpq_canonicalize(v_);
  }
  explicit rat(const std::string& s) {
    mpq_init(v_);
    if (mpq_set_str(v_, s.c_str(), 10) != 0)
      throw std::invalid_argument("unparseable rational: " + s);
    mpq_canonicalize(v_);
  }
  rat(const rat& o) { mpq_init(v_); mpq_set(v_, o.v_); }
  rat(rat&& o) noexcept { mpq_init(v_); mpq_swap(v_, o.v_); }
  rat& operator=(const rat& o) {
    if (this != &o) mpq_set(v_, o.v_);
    return *this;
  }
  rat& operator=(rat&& o) noexcept { mpq_swap(v_, o.v_); return *this; }
  ~rat() { mpq_clear(v_); }

  bool is_zero() const { return mpq_sgn(v_) == 0; }
  int sgn() const { return mpq_sgn(v_); }

  std::string str() const {
    char* s = mpq_get_str(nullptr, 10, v_);
    std::string out(s);
    std::free(s);
    return out;
  }

  // Round to an hp::real at working precision.
  real to_real() const {
    real num, den, r;
    mpfr_set_z(num.raw(), mpq_numref(v_), MPFR_RNDN);
    mpfr_set_z(den.raw(), mpq_denref(v_), MPFR_RNDN);
    mpfr_div(r.raw(), num.raw(), den.raw(), MPFR_RNDN);
    return r;
  }

  friend rat operator+(const rat& a, const rat& b) { rat r; mpq_add(r.v_, a.v_, b.v_); return r; }
  friend rat operator-(const rat& a, const rat& b) { rat r; mpq_sub(r.v_, a.v_, b.v_); return r; }
  friend rat operator*(const rat& a, const rat& b) { rat r; mpq_mul(r.v_, a.v_, b.v_); return r; }
  friend rat operator/(const rat& a, const rat& b) { rat r; mpq_div(r.v_, a.v_, b.v_); return r; }
  rat operator-() const { rat r; mpq_neg(r.v_, v_); return r; }
  friend bool operator==(const rat& a, const rat& b) { return mpq_equal(a.v_, b.v_) != 0; }
  friend bool operator!=(const rat& a, const rat& b) { return !(a == b); }

 private:
  mpq_t v_;
};

// Exact rational from the canonical decimal form produced by real::str().
inline rat rationalize(const real& x) {
  std::string s = x.str();
  if (s == "0" || s == "-0") return rat(0);
  if (s == "nan" || s == "inf" || s == "-inf")
    throw std::invalid_argument("cannot rationalize " + s);
  // Form [-]d.ddd...e±XX; rebuild as integer-mantissa / power of ten.
  size_t epos = s.find('e');
  std::string mant = s.substr(0, epos);
  long ex = std::stol(s.substr(epos + 1));
  size_t dot = mant.find('.');
  long frac_digits = 0;
  if (dot != std::string::npos) {
    frac_digits = static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  long p10 = ex - frac_digits;
  rat m(mant);
  rat ten(10);
  rat scale(1);
  for (long i = 0; i < (p10 > 0 ? p10 : -p10); ++i) scale = scale * ten;
  return p10 >= 0 ? m * scale : m / scale;
}

// One-dimensional null space of an N x (N+1) exact matrix via Gauss-Jordan.
// Returns a vector with the free column set to 1.  Throws if any pivot
// vanishes (rank deficiency beyond the expected single free column).
inline std::vector<rat> null_space_rational(std::vector<std::vector<rat>> mat) {
  size_t rows = mat.size();
  size_t cols = rows + 1;
  for (auto& r : mat)
    if (r.size() != cols) throw std::invalid_argument("null_space_rational: need N x (N+1)");

  std::vector<size_t> pivot_col(rows);
  std::vector<bool> used(cols, false);
  for (size_t r = 0; r < rows; ++r) {
    size_t pc = cols;
    size_t pr = rows;
    for (size_t j = 0; j < cols && pc == cols; ++j) {
      if (used[j]) continue;
      for (size_t i = r; i < rows; ++i) {
        if (!mat[i][j].is_zero()) {
          pc = j;
          pr = i;
          break;
        }
      }
    }
    if (pc == cols) throw std::runtime_error("null_space_rational: rank deficient");
    std::swap(mat[r], mat[pr]);
    used[pc] = true;
    pivot_col[r] = pc;
    rat inv = rat(1) / mat[r][pc];
    for (size_t j = 0; j < cols; ++j) mat[r][j] = mat[r][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || mat[i][pc].is_zero()) continue;
      rat f = mat[i][pc];
      for (size_t j = 0; j < cols; ++j) mat[i][j] = mat[i][j] - f * mat[r][j];
    }
  }

  size_t free_col = cols;
  for (size_t j = 0; j < cols; ++j)
    if (!used[j]) free_col = j;
  std::vector<rat> x(cols, rat(0));
  x[free_col] = rat(1);
  for (size_t r = 0; r < rows; ++r) x[pivot_col[r]] = -mat[r][free_col];
  return x;
}

}  // namespace hp
