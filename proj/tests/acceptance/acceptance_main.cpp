// Release gate.  Each numbered block drives one published behavior of the
// stack end to end and prints [PASS] or [FAIL]; the process exits nonzero
// if any block fails.  Every tolerance is pinned here on purpose: loosening
// one is a release decision, not a test edit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "hp/asymptotics.hpp"
#include "hp/config.hpp"
#include "hp/errors.hpp"
#include "hp/hermite_pade.hpp"
#include "hp/measures.hpp"
#include "hp/riemann.hpp"
#include "hp/zeros.hpp"
#include "oracles.hpp"

using namespace hp;

namespace {

struct check_failure {
  std::string what;
};

#define REQUIRE(cond)                                                     \
  do {                                                                    \
    if (!(cond))                                                          \
      throw check_failure{std::string(#cond) + " (line " +                \
                          std::to_string(__LINE__) + ")"};                \
  } while (0)

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

precision_policy gate_policy() { return {256, 2, 4}; }

measure_spec chebyshev_on(long a, long b) {
  return measure_spec::jacobi({real(a), real(b)}, real(-0.5), real(-0.5));
}

measure_spec lebesgue_on(long a, long b) {
  return measure_spec::jacobi({real(a), real(b)}, real(0L), real(0L));
}

// Shared fixtures; the first block that touches one pays for its table.
system_context& chain1() {
  static system_context ctx({{chebyshev_on(-1, 1)}}, 86, gate_policy());
  return ctx;
}

system_context& chain2() {
  static system_context ctx({{chebyshev_on(-1, 1), lebesgue_on(2, 3)}}, 68,
                            gate_policy());
  return ctx;
}

system_context& chain3() {
  static system_context ctx(
      {{chebyshev_on(-1, 1), lebesgue_on(2, 3), chebyshev_on(4, 5)}}, 18,
      gate_policy());
  return ctx;
}

const experiment_row& find_row(const experiment_report& rep,
                               const std::vector<long>& n,
                               const std::string& series, const complex& z) {
  for (const auto& row : rep.rows)
    if (row.index == n && row.series == series && row.probe.re == z.re &&
        row.probe.im == z.im)
      return row;
  throw check_failure{"no row for series " + series};
}

const rate_fit& find_fit(const experiment_report& rep,
                         const std::string& series) {
  for (const auto& f : rep.fits)
    if (f.series == series) return f;
  throw check_failure{"no fit for series " + series};
}

std::vector<complex> six_probes() {
  return {complex(real(-3L)),
          complex(real(5L)),
          {real(0.5), real(2L)},
          {real(2.5), real(1.5)},
          {real(-0.5), real(-2L)},
          {real(1.5), real(-3L)}};
}

/* === 1: diagonal solutions on one chain reproduce the recurrence === */

void criterion_recurrence() {
  auto t0 = std::chrono::steady_clock::now();
  system_context& ctx = chain1();
  std::vector<poly> p = oracle::chebyshev_monic(12);
  std::vector<poly> r = oracle::chebyshev_companion(12);
  real tol("1e-40");
  for (long k = 1; k <= 12; ++k) {
    hp_solution sol = solve_hp(ctx, multi_index{{k}});
    size_t uk = static_cast<size_t>(k);
    real top = (sol.a[1] - p[uk]).coeff_norm() / p[uk].coeff_norm();
    real low = (sol.a[0] - r[uk]).coeff_norm() / r[uk].coeff_norm();
    REQUIRE(top <= tol);
    REQUIRE(low <= tol);
  }
  REQUIRE(seconds_since(t0) <= 5.0);
}

/* === 2: zero counts, interlacing, residual orders on two chains === */

void criterion_zero_structure() {
  system_context& ctx = chain2();
  interval upper{real(2L), real(3L)};
  for (long k = 1; k <= 8; ++k) {
    multi_index n{{k, k}};
    hp_solution sol = solve_hp(ctx, n);
    REQUIRE(sol.a[2].degree() == 2 * k);

    residual_report resid = residual_orders(sol, ctx.table());
    for (size_t j = 0; j < 2; ++j) {
      REQUIRE(resid.achieved[j] == k + 1);
      REQUIRE(resid.order_exact[j]);
      REQUIRE(resid.vanish_ok[j]);
      REQUIRE(!resid.leading[j].is_zero());
    }

    monic_from_roots top = form_zeros(sol, ctx.table(), 2);
    REQUIRE(top.zeros.size() == static_cast<size_t>(2 * k));
    for (size_t i = 0; i < top.zeros.size(); ++i) {
      REQUIRE(top.zeros.roots[i] > upper.a);
      REQUIRE(top.zeros.roots[i] < upper.b);
      if (i) REQUIRE(top.zeros.roots[i - 1] < top.zeros.roots[i]);
    }

    // the middle coefficient polynomial carries 2k-1 zeros between the
    // top polynomial's zeros; count them by two independent routes
    const poly& mid = sol.a[1];
    REQUIRE(oracle::sturm_count(mid, upper.a, upper.b) == 2 * k - 1);
    REQUIRE(sign_change_count(mid, upper, 1L << 14) == 2 * k - 1);
    std::vector<real> pts =
        oracle::isolate_roots(mid, upper.a, upper.b, real(1L).mul_2si(-80));
    REQUIRE(pts.size() == static_cast<size_t>(2 * k - 1));
    interlace_result il =
        interlace_check(root_list::from_points(pts, upper), top.zeros);
    REQUIRE(il.ok);
  }
}

/* === 3: coefficient-ratio transforms converge on a probe circle === */

void criterion_transform_convergence() {
  auto t0 = std::chrono::steady_clock::now();
  system_context& ctx = chain2();
  std::vector<complex> circle;
  real two_pi = const_pi().mul_2si(1);
  for (long t = 0; t < 16; ++t) {
    real ang = two_pi * real(t) / real(16L);
    circle.push_back(
        {real(2.5) + real(3L) * cos(ang), real(3L) * sin(ang)});
  }
  experiment_report rep =
      run_markov_convergence(ctx, diagonal_ladder(2, 2, 8), circle);
  real top_tol("1e-6");
  for (int j = 0; j < 2; ++j) {
    std::string series = "j=" + std::to_string(j);
    real prev;
    for (long k = 2; k <= 8; ++k) {
      real sup = rep.sup_deviation(series, {k, k});
      if (k > 2) REQUIRE(sup < prev);
      prev = sup;
    }
    REQUIRE(prev <= top_tol);
    const rate_fit& fit = find_fit(rep, series);
    REQUIRE(fit.decreasing);
    REQUIRE(fit.ratio < 0.9);
  }
  REQUIRE(seconds_since(t0) <= 120.0);
}

/* === 4: one-chain coefficient ratio reaches the branch limit === */

void criterion_ratio_limit() {
  system_context& ctx = chain1();
  complex z2(real(2L));
  experiment_report rep =
      run_ratio_asymptotics(ctx, diagonal_ladder(1, 30, 40), 1, {z2});

  // limit value independent of the map machinery
  complex limit((real(2L) + sqrt(real(3L))).mul_2si(-1));
  const experiment_row& last = find_row(rep, {40}, "a k=1", z2);
  REQUIRE(abs(last.measured - limit) <= real("1e-6"));

  const rate_fit& fit = find_fit(rep, "a k=1");
  REQUIRE(fit.decreasing);
  double target = -2.0 * std::log(2.0 + std::sqrt(3.0));
  REQUIRE(std::fabs(fit.slope - target) <= 0.05 * std::fabs(target));
}

/* === 5: conformal map parameters and boundary conditions === */

void criterion_surface() {
  surface_map one = build_surface_map({{{real(-1L), real(1L)}}, 1},
                                      gate_policy());
  real tol("1e-25");
  REQUIRE(abs(one.gamma - real(0.5)) <= tol);
  REQUIRE(abs(one.delta) <= tol);
  REQUIRE(one.w.size() == 1);
  REQUIRE(abs(one.w[0]) <= tol);
  REQUIRE(one.rho.size() == 1);
  REQUIRE(abs(one.rho[0] - real(0.5)) <= tol);
  REQUIRE(abs(one.C1 - real(0.5)) <= tol);
  REQUIRE(one.e == 1);

  for (int l = 1; l <= 2; ++l) {
    surface_map two = build_surface_map(
        {{{real(-1L), real(1L)}, {real(2L), real(3L)}}, l}, gate_policy());
    bvp_report checks = bvp_residual(two);
    REQUIRE(checks.cond3_dev <= real("1e-10"));
    REQUIRE(checks.product_dev <= real("1e-12"));
    REQUIRE(checks.ray_signs_ok);
  }
}

/* === 6: raised-index polynomial ratios track the branch functions === */

void criterion_polynomial_ratios() {
  system_context& ctx = chain2();
  std::vector<complex> probes = six_probes();
  std::vector<multi_index> ladder{multi_index{{10, 10}},
                                  multi_index{{20, 20}}};
  for (int l = 1; l <= 2; ++l) {
    experiment_report rep = run_ratio_asymptotics(ctx, ladder, l, probes);
    for (int k = 1; k <= 2; ++k) {
      std::string series = "Q k=" + std::to_string(k);
      for (const auto& z : probes) {
        const real& coarse = find_row(rep, {10, 10}, series, z).deviation;
        const real& fine = find_row(rep, {20, 20}, series, z).deviation;
        REQUIRE(fine <= real(0.05));
        REQUIRE(fine < coarse);
      }
    }
  }
}

/* === 7: normalizing constants: ratios, telescoping, form moduli === */

void criterion_constant_ladder() {
  system_context& ctx = chain2();
  std::vector<complex> probes = six_probes();
  std::vector<multi_index> ladder;
  for (long k = 4; k <= 20; k += 4) ladder.push_back(multi_index{{k, k}});

  for (int l = 1; l <= 2; ++l) {
    experiment_report rep = run_kappa(ctx, ladder, l, probes);
    for (int k = 1; k <= 2; ++k) {
      std::string series = "kappa k=" + std::to_string(k);
      real prev;
      for (size_t i = 0; i < ladder.size(); ++i) {
        real sup = rep.sup_deviation(series, ladder[i].n);
        if (i) REQUIRE(sup < prev);
        prev = sup;
      }
      REQUIRE(prev <= real(0.05));

      // both sides of the telescoping identity come from the same
      // constants, so any gap is pure rounding
      std::string tele = "K k=" + std::to_string(k);
      for (const auto& n : ladder)
        REQUIRE(rep.sup_deviation(tele, n.n) <= real("1e-50"));
    }
    for (int k = 0; k < 2; ++k) {
      std::string series = "A k=" + std::to_string(k);
      for (const auto& z : probes)
        REQUIRE(find_row(rep, {20, 20}, series, z).deviation <= real(0.1));
    }
  }
}

/* === 8: weighted orthogonality residuals vanish at quadrature level === */

void criterion_orthogonality() {
  struct job {
    system_context* ctx;
    std::vector<long> n;
  };
  std::vector<job> jobs{{&chain1(), {6}},       {&chain1(), {24}},
                        {&chain2(), {4, 4}},    {&chain2(), {12, 12}},
                        {&chain2(), {5, 3}},    {&chain3(), {3, 3, 3}},
                        {&chain3(), {4, 3, 2}}};
  real floor_scale = real(1L).mul_2si(-128);
  for (const auto& item : jobs) {
    const moment_table& table = item.ctx->table();
    form_family fam(table, item.ctx->policy);
    multi_index n{item.n};
    int m = n.m();
    for (int j = 0; j < m; ++j) {
      poly q_mid = fam.factor_poly(n, j + 1);
      poly q_lo = fam.factor_poly(n, j);
      poly q_hi = fam.factor_poly(n, j + 2);
      const std::vector<real>& h = fam.H_slit_values(n, j + 1);
      real floor_term = floor_scale * q_mid.coeff_norm();
      for (long nu = 0; nu < n.eta(j + 1); ++nu) {
        real quad_err;
        real res = orthogonality_residual(table, j + 1, q_mid, q_lo, q_hi,
                                          h, nu, &quad_err);
        REQUIRE(abs(res) <= (quad_err + floor_term) * real(10L));
      }
    }
  }
}

/* === 9: randomized raised-index zero interlacing === */

void criterion_random_interlacing() {
  struct draw {
    int m;
    std::vector<long> n;
    int l, j;
  };
  std::mt19937 rng(9781);
  std::vector<draw> draws;
  while (draws.size() < 200) {
    draw d;
    d.m = 1 + static_cast<int>(rng() % 3);
    long cap = 16 / d.m;
    long total = 0;
    d.n.clear();
    for (int i = 0; i < d.m; ++i) {
      d.n.push_back(static_cast<long>(rng() % (cap + 1)));
      total += d.n.back();
    }
    if (total == 0) continue;
    d.l = 1 + static_cast<int>(rng() % d.m);
    multi_index n{d.n};
    do
      d.j = 1 + static_cast<int>(rng() % d.m);
    while (n.eta(d.j) == 0);
    draws.push_back(std::move(d));
  }

  precision_policy quick{128, 2, 4};
  std::vector<long> budget(4, 0);
  for (const auto& d : draws) {
    multi_index n{d.n};
    long need = std::max(needed_budget(n), needed_budget(n.bumped(d.l)));
    budget[static_cast<size_t>(d.m)] =
        std::max(budget[static_cast<size_t>(d.m)], need);
  }
  std::vector<system_context> ctxs;
  ctxs.emplace_back(nikishin_generator{{chebyshev_on(-1, 1)}},
                    std::max(budget[1], 6L), quick);
  ctxs.emplace_back(
      nikishin_generator{{chebyshev_on(-1, 1), lebesgue_on(2, 3)}},
      std::max(budget[2], 6L), quick);
  ctxs.emplace_back(nikishin_generator{{chebyshev_on(-1, 1),
                                        lebesgue_on(2, 3),
                                        chebyshev_on(4, 5)}},
                    std::max(budget[3], 6L), quick);

  precision_guard guard(160);
  for (const auto& d : draws) {
    system_context& ctx = ctxs[static_cast<size_t>(d.m - 1)];
    multi_index n{d.n};
    multi_index nb = n.bumped(d.l);
    hp_solution base = solve_hp(ctx, n);
    hp_solution raised = solve_hp(ctx, nb);
    monic_from_roots zb = form_zeros(base, ctx.table(), d.j);
    monic_from_roots zr = form_zeros(raised, ctx.table(), d.j);
    interlace_result il = interlace_check(zb.zeros, zr.zeros);
    REQUIRE(il.ok);
  }
}

int run_block(int id, const char* title, void (*body)()) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    body();
    std::printf("[PASS] %d %s (%.1fs)\n", id, title, seconds_since(t0));
    return 0;
  } catch (const check_failure& f) {
    std::printf("[FAIL] %d %s: %s\n", id, title, f.what.c_str());
  } catch (const std::exception& e) {
    std::printf("[FAIL] %d %s: %s\n", id, title, e.what());
  }
  return 1;
}

}  // namespace

int main() {
  precision_guard guard(288);
  int failed = 0;
  failed += run_block(1, "one-chain recurrence match", criterion_recurrence);
  failed += run_block(2, "zero counts and residual orders",
                      criterion_zero_structure);
  failed += run_block(3, "transform convergence on a circle",
                      criterion_transform_convergence);
  failed += run_block(4, "coefficient-ratio limit and rate",
                      criterion_ratio_limit);
  failed += run_block(5, "surface parameters and boundary checks",
                      criterion_surface);
  failed += run_block(6, "raised-index polynomial ratios",
                      criterion_polynomial_ratios);
  failed += run_block(7, "constant ladder and telescoping",
                      criterion_constant_ladder);
  failed += run_block(8, "weighted orthogonality residuals",
                      criterion_orthogonality);
  failed += run_block(9, "randomized zero interlacing",
                      criterion_random_interlacing);
  std::printf("acceptance: %d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
