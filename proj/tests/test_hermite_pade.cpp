#include <doctest.h>

#include <vector>

#include "hp/errors.hpp"
#include "hp/hermite_pade.hpp"
#include "oracles.hpp"

using hp::complex;
using hp::hp_solution;
using hp::moment_table;
using hp::multi_index;
using hp::nikishin_generator;
using hp::poly;
using hp::precision_policy;
using hp::real;

namespace {

nikishin_generator cheb1() {
  nikishin_generator gen;
  gen.sigma.push_back(hp::measure_spec::jacobi({real(-1L), real(1L)},
                                               real(-0.5), real(-0.5)));
  return gen;
}

nikishin_generator cheb_leg2() {
  nikishin_generator gen = cheb1();
  gen.sigma.push_back(
      hp::measure_spec::jacobi({real(2L), real(3L)}, real(0L), real(0L)));
  return gen;
}

real coeff_gap(const poly& got, const poly& want) {
  poly d = got - want;
  return d.coeff_norm();
}

}  // namespace

TEST_CASE("multi-index bookkeeping") {
  multi_index n{{3, 1, 2}};
  CHECK(n.m() == 3);
  CHECK(n.total() == 6);
  CHECK(n.eta(0) == 0);
  CHECK(n.eta(1) == 3);
  CHECK(n.eta(2) == 4);
  CHECK(n.eta(3) == 6);
  // chi(j,k) = min(n_j + 1, n_{j+1} + 2, ..., n_k + 2)
  CHECK(n.chi(1, 1) == 4);
  CHECK(n.chi(1, 2) == 3);
  CHECK(n.chi(2, 3) == 2);
  CHECK(n.chi(1, 3) == 3);
  multi_index b = n.bumped(2);
  CHECK(b.n == std::vector<long>{3, 2, 2});
  CHECK(n.n == std::vector<long>{3, 1, 2});

  CHECK_THROWS_AS(hp::validate(multi_index{{}}), hp::validation_error);
  CHECK_THROWS_AS(hp::validate(multi_index{{0, 0}}), hp::validation_error);
  CHECK_THROWS_AS(hp::validate(multi_index{{2, -1}}), hp::validation_error);
  CHECK_NOTHROW(hp::validate(multi_index{{0, 2}}));
}

TEST_CASE("system assembly has the contracted shape") {
  hp::precision_guard g(256);
  precision_policy pol;
  moment_table table = hp::nikishin_moments(cheb_leg2(), 12, pol);
  multi_index n{{2, 1}};
  hp::matrix sys = hp::assemble_system(table, n);
  CHECK(sys.rows == 9);   // |n| (m+1)
  CHECK(sys.cols == 10);  // one more unknown than equations
}

TEST_CASE("classical weight reproduces hand solutions") {
  hp::precision_guard g(256);
  precision_policy pol;
  moment_table table = hp::nikishin_moments(cheb1(), 8, pol);
  real tol = real(1L).mul_2si(-190);

  // n = (1): a_1 = x, a_0 = pi
  hp_solution s1 = hp::solve_hp(table, multi_index{{1}}, pol);
  CHECK(coeff_gap(s1.a[1], poly::identity()) <= tol);
  CHECK(coeff_gap(s1.a[0], poly::constant(hp::const_pi())) <= tol);

  // n = (2): a_1 = x^2 - 1/2, a_0 = pi x
  hp_solution s2 = hp::solve_hp(table, multi_index{{2}}, pol);
  poly want1({real(-1L).mul_2si(-1), real(0L), real(1L)});
  poly want0({real(0L), hp::const_pi()});
  CHECK(coeff_gap(s2.a[1], want1) <= tol);
  CHECK(coeff_gap(s2.a[0], want0) <= tol);
  CHECK(s2.index.n == std::vector<long>{2});
  CHECK(s2.a[1].leading() == real(1L));  // monic normalization is exact
  CHECK(s2.condition_estimate.is_finite());
  CHECK(s2.normal[0] == 1);
  CHECK(s2.normal[1] == 1);
  REQUIRE(s2.residual_orders.size() == 1);
  CHECK(s2.residual_orders[0] == 3);

  // the leading residual coefficient is -pi/8
  hp::residual_report rep = hp::residual_orders(s2, table);
  REQUIRE(rep.achieved.size() == 1);
  CHECK(rep.achieved[0] == 3);
  CHECK(rep.order_exact[0] == 1);
  CHECK(rep.vanish_ok[0] == 1);
  CHECK(abs(rep.leading[0] + hp::const_pi().mul_2si(-3)) <= tol);
}

TEST_CASE("recurrence oracle equivalence across a degree ladder") {
  hp::precision_guard g(256);
  precision_policy pol;
  moment_table table = hp::nikishin_moments(cheb1(), 26, pol);
  auto ps = oracle::chebyshev_monic(10);
  auto rs = oracle::chebyshev_companion(10);
  for (long k = 1; k <= 10; ++k) {
    hp_solution sol = hp::solve_hp(table, multi_index{{k}}, pol);
    real rel = real(1L).mul_2si(-133);  // 1e-40
    CHECK(coeff_gap(sol.a[1], ps[static_cast<size_t>(k)]) <=
          ps[static_cast<size_t>(k)].coeff_norm() * rel);
    CHECK(coeff_gap(sol.a[0], rs[static_cast<size_t>(k)]) <=
          rs[static_cast<size_t>(k)].coeff_norm() * rel);
  }
}

TEST_CASE("two-measure chain: normality, degrees, and the exact path") {
  hp::precision_guard g(288);
  precision_policy pol;
  moment_table table = hp::nikishin_moments(cheb_leg2(), 10, pol);

  multi_index n{{1, 1}};
  hp_solution sol = hp::solve_hp(table, n, pol);
  REQUIRE(sol.a.size() == 3);
  CHECK(sol.a[2].degree() == 2);
  CHECK(sol.a[1].degree(-180) == 1);
  CHECK(sol.a[0].degree(-180) == 1);
  for (char f : sol.normal) CHECK(f == 1);

  // independent dense elimination over the same moment data
  hp::matrix sys = hp::assemble_system(table, n);
  std::vector<std::vector<real>> rows(sys.rows);
  for (size_t i = 0; i < sys.rows; ++i)
    for (size_t j = 0; j < sys.cols; ++j) rows[i].push_back(sys(i, j));
  std::vector<real> v = oracle::naive_null_vector(rows);
  // normalize both on the monic leading slot (the last unknown)
  std::vector<real> got;
  for (const poly& p : sol.a)
    for (const real& c : p.coeffs()) got.push_back(c);
  REQUIRE(got.size() == v.size());
  const real& scale = v.back();
  for (size_t i = 0; i < v.size(); ++i)
    CHECK(abs(got[i] - v[i] / scale) <= real(1L).mul_2si(-180));

  // rationalized exact elimination agrees with the float route
  hp_solution ex = hp::solve_hp_exact(table, n);
  for (size_t j = 0; j < sol.a.size(); ++j)
    CHECK(coeff_gap(ex.a[j], sol.a[j]) <= real(1L).mul_2si(-180));
  CHECK(ex.residual_orders == sol.residual_orders);

  // residual orders are exact with a nonvanishing leading coefficient
  hp::residual_report rep = hp::residual_orders(sol, table);
  for (size_t j = 0; j < rep.achieved.size(); ++j) {
    CHECK(rep.achieved[j] == n.n[j] + 1);
    CHECK(rep.order_exact[j] == 1);
    CHECK(rep.vanish_ok[j] == 1);
    CHECK(!rep.leading[j].is_zero());
  }
}

TEST_CASE("linear forms match closed-form values and decay orders") {
  hp::precision_guard g(256);
  precision_policy pol;
  moment_table table = hp::nikishin_moments(cheb1(), 12, pol);

  // n = (1), z = 3: A_0(3) = pi - 3 pi / sqrt(8)
  hp_solution s1 = hp::solve_hp(table, multi_index{{1}}, pol);
  complex z3(real(3L));
  complex got = hp::evaluate_form(s1, table, 0, z3);
  real want = hp::const_pi() - real(3L) * hp::const_pi() / sqrt(real(8L));
  CHECK(abs(got - complex(want)) <= real(1L).mul_2si(-190));

  // same value through the closed-form transform
  complex via_hat = complex(hp::const_pi()) -
                    s1.a[1].eval(z3) * oracle::cheb_hat(z3);
  CHECK(abs(got - via_hat) <= real(1L).mul_2si(-190));

  // top level is the plain polynomial (-1)^m a_m
  complex top = hp::evaluate_form(s1, table, 1, z3);
  CHECK(abs(top + complex(real(3L))) <= real(1L).mul_2si(-190));

  // real-argument overload and its derivative vs a centered difference
  hp_solution s3 = hp::solve_hp(table, multi_index{{3}}, pol);
  real x(4L);
  real h = real(1L).mul_2si(-60);
  real fd = (hp::evaluate_form(s3, table, 0, x + h) -
             hp::evaluate_form(s3, table, 0, x - h)) /
            h.mul_2si(1);
  real dv = hp::evaluate_form_deriv(s3, table, 0, x);
  CHECK(abs(fd - dv) <= abs(dv).mul_2si(-100));

  // far-field decay: |A_0(z)| z^(n+1) approaches the leading residual.
  // the evaluation cancels ~z^(2n) of head terms, so push z out only as
  // far as the 256-bit headroom allows
  hp::residual_report rep = hp::residual_orders(s3, table);
  complex far(real(1L).mul_2si(30));
  complex a0 = hp::evaluate_form(s3, table, 0, far);
  real scaled = abs(a0) * pow(abs(far), rep.achieved[0]);
  CHECK(abs(scaled - abs(rep.leading[0])) <= abs(rep.leading[0]).mul_2si(-55));
}

TEST_CASE("escalating context solve and index validation") {
  precision_policy pol;
  hp::system_context ctx(cheb1(), 14, pol);
  hp_solution sol = hp::solve_hp(ctx, multi_index{{4}});
  CHECK(sol.bits >= pol.bits);
  CHECK(sol.a[1].degree() == 4);

  hp::moment_table small = hp::nikishin_moments(cheb1(), 3, pol);
  CHECK_THROWS_AS(hp::solve_hp(small, multi_index{{4}}, pol),
                  hp::validation_error);
  CHECK_THROWS_AS(hp::solve_hp(small, multi_index{{1, 1}}, pol),
                  hp::validation_error);
}
