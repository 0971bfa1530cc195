#include "hp/real.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hp {

namespace {
thread_local long g_working_bits = 256;
}  // namespace

long working_precision() { return g_working_bits; }

void set_working_precision(long bits) {
  if (bits < MPFR_PREC_MIN) throw std::invalid_argument("working precision too small");
  g_working_bits = bits;
}

real::real() { mpfr_init2(v_, g_working_bits); mpfr_set_zero(v_, 1); }

real::real(long x) { mpfr_init2(v_, g_working_bits); mpfr_set_si(v_, x, MPFR_RNDN); }

real::real(unsigned long x) { mpfr_init2(v_, g_working_bits); mpfr_set_ui(v_, x, MPFR_RNDN); }

real::real(double x) { mpfr_init2(v_, g_working_bits); mpfr_set_d(v_, x, MPFR_RNDN); }

real::real(const std::string& decimal) {
  mpfr_init2(v_, g_working_bits);
  if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("unparseable decimal: " + decimal);
}

real::real(const real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

real::real(real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

real& real::operator=(const real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

real& real::operator=(real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

real::~real() { mpfr_clear(v_); }

real real::infinity(int sign) {
  real r;
  mpfr_set_inf(r.v_, sign);
  return r;
}

std::string real::str() const {
  size_t digits = static_cast<size_t>(std::floor(precision() * 0.30102999566398119)) + 2;
  return str(digits);
}

std::string real::str(size_t digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sgn() < 0 ? "-inf" : "inf";
  if (is_zero()) return sgn() < 0 ? "-0" : "0";
  if (digits < 2) digits = 2;
  mpfr_exp_t e = 0;
  char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // mpfr mantissa is 0.dddd * 10^e; shift to d.ddd * 10^(e-1).
  std::string out = sign + mant.substr(0, 1) + "." + mant.substr(1);
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%+03ld", static_cast<long>(e) - 1);
  return out + buf;
}

#define HP_BINOP(op, fn)                                            \
  real operator op(const real& a, const real& b) {                 \
    real r;                                                        \
    fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);                      \
    return r;                                                      \
  }                                                                \
  real operator op(const real& a, long b) {                        \
    real r;                                                        \
    fn##_si(r.raw(), a.raw(), b, MPFR_RNDN);                       \
    return r;                                                      \
  }

HP_BINOP(+, mpfr_add)
HP_BINOP(-, mpfr_sub)
HP_BINOP(*, mpfr_mul)
HP_BINOP(/, mpfr_div)
#undef HP_BINOP

real operator+(long a, const real& b) { return b + a; }
real operator*(long a, const real& b) { return b * a; }

real operator-(long a, const real& b) {
  real r;
  mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}

real operator/(long a, const real& b) {
  real r;
  mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}

real& real::operator+=(const real& rhs) { mpfr_add(v_, v_, rhs.v_, MPFR_RNDN); return *this; }
real& real::operator-=(const real& rhs) { mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN); return *this; }
real& real::operator*=(const real& rhs) { mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN); return *this; }
real& real::operator/=(const real& rhs) { mpfr_div(v_, v_, rhs.v_, MPFR_RNDN); return *this; }
real& real::operator+=(long rhs) { mpfr_add_si(v_, v_, rhs, MPFR_RNDN); return *this; }
real& real::operator-=(long rhs) { mpfr_sub_si(v_, v_, rhs, MPFR_RNDN); return *this; }
real& real::operator*=(long rhs) { mpfr_mul_si(v_, v_, rhs, MPFR_RNDN); return *this; }
real& real::operator/=(long rhs) { mpfr_div_si(v_, v_, rhs, MPFR_RNDN); return *this; }

real real::operator-() const {
  real r;
  mpfr_neg(r.raw(), v_, MPFR_RNDN);
  return r;
}

real real::mul_2si(long exp2) const {
  real r;
  mpfr_mul_2si(r.raw(), v_, exp2, MPFR_RNDN);
  return r;
}

#define HP_UNARY(name, fn)        \
  real name(const real& x) {      \
    real r;                       \
    fn(r.raw(), x.raw(), MPFR_RNDN); \
    return r;                     \
  }

HP_UNARY(abs, mpfr_abs)
HP_UNARY(sqrt, mpfr_sqrt)
HP_UNARY(sqr, mpfr_sqr)
HP_UNARY(exp, mpfr_exp)
HP_UNARY(log, mpfr_log)
HP_UNARY(sin, mpfr_sin)
HP_UNARY(cos, mpfr_cos)
HP_UNARY(atan, mpfr_atan)
HP_UNARY(sinh, mpfr_sinh)
HP_UNARY(cosh, mpfr_cosh)
HP_UNARY(tanh, mpfr_tanh)
HP_UNARY(gamma_fn, mpfr_gamma)
#undef HP_UNARY

real floor(const real& x) {
  real r;
  mpfr_floor(r.raw(), x.raw());
  return r;
}

real ceil(const real& x) {
  real r;
  mpfr_ceil(r.raw(), x.raw());
  return r;
}

real pow(const real& base, long e) {
  real r;
  mpfr_pow_si(r.raw(), base.raw(), e, MPFR_RNDN);
  return r;
}

real pow(const real& base, const real& e) {
  real r;
  mpfr_pow(r.raw(), base.raw(), e.raw(), MPFR_RNDN);
  return r;
}

real atan2(const real& y, const real& x) {
  real r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

real hypot(const real& x, const real& y) {
  real r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

real min(const real& a, const real& b) { return a <= b ? a : b; }
real max(const real& a, const real& b) { return a >= b ? a : b; }

real const_pi() {
  real r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

double log2_abs(const real& x) {
  if (x.is_zero() || x.is_nan()) return -std::numeric_limits<double>::infinity();
  // exponent gives the magnitude to within one bit, plenty for thresholds
  return static_cast<double>(mpfr_get_exp(x.raw()));
}

}  // namespace hp
