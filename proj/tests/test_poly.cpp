#include <doctest.h>

#include <vector>

#include "hp/poly.hpp"
#include "oracles.hpp"

using hp::complex;
using hp::poly;
using hp::real;

TEST_CASE("degree ignores trailing exact zeros") {
  poly p({real(1L), real(0L), real(2L), real(0L), real(0L)});
  CHECK(p.degree() == 2);
  CHECK(poly().degree() == -1);
  CHECK(poly().is_zero());
  CHECK(poly::constant(real(0L)).degree() == -1);
  CHECK(poly::identity().degree() == 1);
}

TEST_CASE("relative-threshold degree drops rounding dust") {
  hp::precision_guard g(256);
  poly p({real(1L), real(1L), real(1L).mul_2si(-200)});
  CHECK(p.degree() == 2);
  CHECK(p.degree(-150) == 1);
  CHECK(p.degree(-250) == 2);
}

TEST_CASE("evaluation matches direct expansion") {
  hp::precision_guard g(256);
  // p(x) = 2 - 3x + x^3
  poly p({real(2L), real(-3L), real(0L), real(1L)});
  CHECK(p.eval(real(2L)) == real(2L - 6L + 8L));
  complex z(real(1L), real(1L));
  // z^3 = -2+2i at z = 1+i
  complex want = complex(real(2L)) - complex(real(3L)) * z +
                 complex(real(-2L), real(2L));
  complex got = p.eval(z);
  CHECK(abs(got - want) <= real(1L).mul_2si(-250));
}

TEST_CASE("arithmetic and derivative") {
  poly a({real(1L), real(2L)});        // 1 + 2x
  poly b({real(0L), real(0L), real(3L)});  // 3x^2
  poly s = a + b;
  CHECK(s.degree() == 2);
  CHECK(s.coeffs()[2] == real(3L));
  poly d = b - a;
  CHECK(d.coeffs()[0] == real(-1L));
  poly m = a * b;  // 3x^2 + 6x^3
  CHECK(m.degree() == 3);
  CHECK(m.coeffs()[2] == real(3L));
  CHECK(m.coeffs()[3] == real(6L));
  CHECK((a * real(5L)).coeffs()[1] == real(10L));
  poly dd = m.derivative();  // 6x + 18x^2
  CHECK(dd.coeffs()[1] == real(6L));
  CHECK(dd.coeffs()[2] == real(18L));
  CHECK(poly::constant(real(4L)).derivative().is_zero());
}

TEST_CASE("monic expansion reproduces hand products") {
  hp::precision_guard g(256);
  poly p = hp::monic_expand({real(1L), real(2L)});
  // (x-1)(x-2) = 2 - 3x + x^2
  CHECK(p.coeffs()[0] == real(2L));
  CHECK(p.coeffs()[1] == real(-3L));
  CHECK(p.coeffs()[2] == real(1L));
  CHECK(p.leading() == real(1L));
  CHECK(hp::monic_expand({}).degree() == 0);
}

TEST_CASE("coefficient norm is the max magnitude") {
  poly p({real(1L), real(-9L), real(4L)});
  CHECK(p.coeff_norm() == real(9L));
}

TEST_CASE("oracle recurrence reproduces classical Chebyshev values") {
  hp::precision_guard g(256);
  auto ps = oracle::chebyshev_monic(8);
  // 2^(1-k) T_k: p_2 = x^2 - 1/2, p_3 = x^3 - (3/4) x
  CHECK(ps[2].coeffs()[0] == real(-1L).mul_2si(-1));
  CHECK(ps[3].coeffs()[1] == real(-3L).mul_2si(-2));
  // p_k(cos t) = 2^(1-k) cos(k t) at a generic angle
  real t = real(1L) / 3L;
  real lhs = ps[8].eval(cos(t));
  real rhs = cos(t * 8L).mul_2si(-7);
  CHECK(abs(lhs - rhs) <= real(1L).mul_2si(-245));
  // closed-form roots really are roots
  for (const real& r : oracle::chebyshev_roots(8))
    CHECK(abs(ps[8].eval(r)) <= real(1L).mul_2si(-245));
}

TEST_CASE("oracle Sturm counts match known root layouts") {
  hp::precision_guard g(256);
  auto ps = oracle::chebyshev_monic(7);
  CHECK(oracle::sturm_count(ps[7], real(-1L), real(1L)) == 7);
  // the root at x = 0 sits on the excluded endpoint of (0, 1]
  CHECK(oracle::sturm_count(ps[7], real(0L), real(1L)) == 3);
  poly no_real({real(1L), real(0L), real(1L)});  // x^2 + 1
  CHECK(oracle::sturm_count(no_real, real(-10L), real(10L)) == 0);
  auto roots = oracle::isolate_roots(ps[5], real(-1L), real(1L),
                                     real(1L).mul_2si(-120));
  auto want = oracle::chebyshev_roots(5);
  REQUIRE(roots.size() == want.size());
  for (size_t i = 0; i < roots.size(); ++i)
    CHECK(abs(roots[i] - want[i]) <= real(1L).mul_2si(-118));
}
