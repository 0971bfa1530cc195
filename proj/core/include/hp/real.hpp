#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace hp {

// Working precision is a thread-local significand size in bits.  Every
// arithmetic result is rounded (to nearest) into a fresh value carrying the
// working precision active at the time of the operation; compound
// assignments round into the precision the receiver already has.  This keeps
// precision explicit and local instead of threading it through every call.
long working_precision();
void set_working_precision(long bits);

// Restores the previous working precision when it goes out of scope.
class precision_guard {
 public:
  explicit precision_guard(long bits) : saved_(working_precision()) {
    set_working_precision(bits);
  }
  ~precision_guard() { set_working_precision(saved_); }
  precision_guard(const precision_guard&) = delete;
  precision_guard& operator=(const precision_guard&) = delete;

 private:
  long saved_;
};

class real {
 public:
  real();  // zero at working precision
  real(long x);
  real(int x) : real(static_cast<long>(x)) {}
  real(unsigned long x);
  real(double x);
  explicit real(const std::string& decimal);  // parse at working precision

  real(const real& other);
  real(real&& other) noexcept;
  real& operator=(const real& other);
  real& operator=(real&& other) noexcept;
  ~real();

  long precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // Canonical decimal form "[-]d.ddd...e±XX" with enough digits to carry the
  // full binary precision.  Identical values at identical precision always
  // produce identical strings.
  std::string str() const;
  std::string str(size_t digits) const;

  static real infinity(int sign = 1);

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sgn() const { return mpfr_sgn(v_); }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  real& operator+=(const real& rhs);
  real& operator-=(const real& rhs);
  real& operator*=(const real& rhs);
  real& operator/=(const real& rhs);
  real& operator+=(long rhs);
  real& operator-=(long rhs);
  real& operator*=(long rhs);
  real& operator/=(long rhs);

  real operator-() const;

  // value = mantissa * 2^exp2, both exact; used for threshold arithmetic.
  real mul_2si(long exp2) const;

  friend real operator+(const real& a, const real& b);
  friend real operator-(const real& a, const real& b);
  friend real operator*(const real& a, const real& b);
  friend real operator/(const real& a, const real& b);
  friend real operator+(const real& a, long b);
  friend real operator-(const real& a, long b);
  friend real operator*(const real& a, long b);
  friend real operator/(const real& a, long b);
  friend real operator+(long a, const real& b);
  friend real operator-(long a, const real& b);
  friend real operator*(long a, const real& b);
  friend real operator/(long a, const real& b);

  friend bool operator==(const real& a, const real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const real& a, const real& b) { return !(a == b); }
  friend bool operator<(const real& a, const real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const real& a, const real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const real& a, const real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const real& a, const real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend bool operator<(const real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

 private:
  mpfr_t v_;
};

real abs(const real& x);
real sqrt(const real& x);
real sqr(const real& x);
real exp(const real& x);
real log(const real& x);
real pow(const real& base, long e);
real pow(const real& base, const real& e);
real sin(const real& x);
real cos(const real& x);
real atan(const real& x);
real atan2(const real& y, const real& x);
real sinh(const real& x);
real cosh(const real& x);
real tanh(const real& x);
real hypot(const real& x, const real& y);
real gamma_fn(const real& x);
real floor(const real& x);
real ceil(const real& x);
real min(const real& a, const real& b);
real max(const real& a, const real& b);
real const_pi();

// log2(|x|), -inf for zero; cheap magnitude probe for thresholding.
double log2_abs(const real& x);

}  // namespace hp
