#include <benchmark/benchmark.h>

#include "hp/hermite_pade.hpp"
#include "hp/measures.hpp"
#include "hp/zeros.hpp"

using namespace hp;

namespace {

system_context& two_chain() {
  static system_context ctx(
      {{measure_spec::jacobi({real(-1L), real(1L)}, real(-0.5), real(-0.5)),
        measure_spec::jacobi({real(2L), real(3L)}, real(0L), real(0L))}},
      40, {256, 2, 4});
  ctx.table();
  return ctx;
}

void bm_form_zeros(benchmark::State& state) {
  precision_guard guard(288);
  system_context& ctx = two_chain();
  long k = state.range(0);
  hp_solution sol = solve_hp(ctx, multi_index{{k, k}});
  for (auto _ : state) {
    monic_from_roots mf = form_zeros(sol, ctx.table(), 2);
    benchmark::DoNotOptimize(mf.zeros.roots);
  }
}
BENCHMARK(bm_form_zeros)->Arg(2)->Arg(6)->Arg(12);

void bm_interlace_check(benchmark::State& state) {
  precision_guard guard(288);
  system_context& ctx = two_chain();
  hp_solution lo = solve_hp(ctx, multi_index{{12, 12}});
  hp_solution hi = solve_hp(ctx, multi_index{{13, 12}});
  root_list a = form_zeros(lo, ctx.table(), 2).zeros;
  root_list b = form_zeros(hi, ctx.table(), 2).zeros;
  for (auto _ : state) {
    interlace_result il = interlace_check(a, b);
    benchmark::DoNotOptimize(il.ok);
  }
}
BENCHMARK(bm_interlace_check);

void bm_orthogonality_residual(benchmark::State& state) {
  precision_guard guard(288);
  system_context& ctx = two_chain();
  hp_solution sol = solve_hp(ctx, multi_index{{6, 6}});
  poly q2 = form_zeros(sol, ctx.table(), 2).q;
  poly q1 = form_zeros(sol, ctx.table(), 1).q;
  poly one = poly::constant(real(1L));
  for (auto _ : state) {
    real res = orthogonality_residual(ctx.table(), 2, q2, q1, one, {}, 3);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(bm_orthogonality_residual);

void bm_sign_changes(benchmark::State& state) {
  precision_guard guard(288);
  system_context& ctx = two_chain();
  hp_solution sol = solve_hp(ctx, multi_index{{12, 12}});
  interval iv{real(2L), real(3L)};
  long budget = state.range(0);
  for (auto _ : state) {
    long count = sign_change_count(sol.a[2], iv, budget);
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(bm_sign_changes)->Arg(256)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
