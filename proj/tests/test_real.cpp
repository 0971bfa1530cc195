#include <doctest.h>

#include "hp/complex.hpp"
#include "hp/real.hpp"

using hp::complex;
using hp::real;

namespace {

bool close2(const real& a, const real& b, long bits) {
  return abs(a - b) <= max(abs(a), abs(b)).mul_2si(-bits);
}

}  // namespace

TEST_CASE("working precision is per-thread state with guard restore") {
  long before = hp::working_precision();
  {
    hp::precision_guard g(192);
    CHECK(hp::working_precision() == 192);
    real x(1L);
    CHECK(x.precision() == 192);
    {
      hp::precision_guard inner(320);
      CHECK(real(1L).precision() == 320);
    }
    CHECK(hp::working_precision() == 192);
  }
  CHECK(hp::working_precision() == before);
}

TEST_CASE("decimal round trip is exact at matching precision") {
  hp::precision_guard g(256);
  real x = sqrt(real(2L));
  real y(x.str());
  CHECK(x == y);
  CHECK(x.str() == y.str());
  // digit-limited form is a prefix-rounded rendering, not the carrier
  CHECK(real(x.str(10)) != x);
}

TEST_CASE("arithmetic basics against closed forms") {
  hp::precision_guard g(256);
  CHECK(close2(sqr(sqrt(real(2L))), real(2L), 250));
  CHECK(close2(hp::const_pi(), atan(real(1L)) * 4L, 250));
  CHECK(close2(exp(log(real(10L))), real(10L), 248));
  CHECK(close2(sinh(real(1L)) + cosh(real(1L)), exp(real(1L)), 250));
  CHECK(hypot(real(3L), real(4L)) == real(5L));
  CHECK(close2(hp::gamma_fn(real(5L)), real(24L), 250));
  CHECK(atan2(real(0L), real(-1L)) == hp::const_pi());
}

TEST_CASE("mul_2si shifts the exponent exactly") {
  hp::precision_guard g(128);
  real x(3L);
  CHECK(x.mul_2si(-2) == real(3L) / 4L);
  CHECK(x.mul_2si(100).mul_2si(-100) == x);
  double mag = hp::log2_abs(real(1L).mul_2si(-500));
  CHECK(mag >= -500.0);
  CHECK(mag <= -499.0);
}

TEST_CASE("comparisons and specials") {
  real inf = real::infinity();
  CHECK(inf.is_inf());
  CHECK(!inf.is_finite());
  CHECK(real::infinity(-1) < real(0L));
  CHECK(real(0L).is_zero());
  CHECK(real(-7L).sgn() == -1);
  CHECK(min(real(2L), real(3L)) == real(2L));
  CHECK(max(real(2L), real(3L)) == real(3L));
  CHECK(real(5L) > 4L);
  CHECK(real(5L) == 5L);
}

TEST_CASE("complex square root keeps the principal branch") {
  hp::precision_guard g(256);
  auto check_sqrt = [](const complex& z) {
    complex r = hp::sqrt(z);
    CHECK(abs(r * r - z) <= (abs(z) + real(1L)).mul_2si(-250));
    // principal: nonnegative real part, cut on the negative axis
    CHECK(r.re >= real(0L));
  };
  check_sqrt(complex(real(3L), real(4L)));
  check_sqrt(complex(real(3L), real(-4L)));
  check_sqrt(complex(real(-3L), real(4L)));
  check_sqrt(complex(real(-3L), real(-4L)));
  check_sqrt(complex(real(-1L), real(0L)));
  CHECK(hp::sqrt(complex(real(-4L))).im == real(2L));
}

TEST_CASE("complex helpers") {
  complex z(real(3L), real(-4L));
  CHECK(abs(z) == real(5L));
  CHECK(norm2(z) == real(25L));
  CHECK(conj(z).im == real(4L));
  complex q = z / complex(real(1L), real(1L));
  // (3-4i)/(1+i) = (-1-7i)/2
  CHECK(close2(q.re, real(-1L).mul_2si(-1), 250));
  CHECK(close2(q.im, real(-7L).mul_2si(-1), 250));
}
