#include <benchmark/benchmark.h>

#include "hp/hermite_pade.hpp"
#include "hp/measures.hpp"

using namespace hp;

namespace {

system_context& two_chain() {
  static system_context ctx(
      {{measure_spec::jacobi({real(-1L), real(1L)}, real(-0.5), real(-0.5)),
        measure_spec::jacobi({real(2L), real(3L)}, real(0L), real(0L))}},
      40, {256, 2, 4});
  ctx.table();  // pay for the table once, outside the timing loops
  return ctx;
}

void bm_solve_diagonal(benchmark::State& state) {
  precision_guard guard(288);
  system_context& ctx = two_chain();
  multi_index n{{state.range(0), state.range(0)}};
  for (auto _ : state) {
    hp_solution sol = solve_hp(ctx, n);
    benchmark::DoNotOptimize(sol.a);
  }
}
BENCHMARK(bm_solve_diagonal)->Arg(2)->Arg(6)->Arg(12);

void bm_solve_exact(benchmark::State& state) {
  precision_guard guard(288);
  system_context& ctx = two_chain();
  multi_index n{{state.range(0), state.range(0)}};
  for (auto _ : state) {
    hp_solution sol = solve_hp_exact(ctx.table(), n);
    benchmark::DoNotOptimize(sol.a);
  }
}
BENCHMARK(bm_solve_exact)->Arg(2)->Arg(4);

void bm_residual_orders(benchmark::State& state) {
  precision_guard guard(288);
  system_context& ctx = two_chain();
  hp_solution sol = solve_hp(ctx, multi_index{{8, 8}});
  for (auto _ : state) {
    residual_report rep = residual_orders(sol, ctx.table());
    benchmark::DoNotOptimize(rep.achieved);
  }
}
BENCHMARK(bm_residual_orders);

void bm_evaluate_form(benchmark::State& state) {
  precision_guard guard(288);
  system_context& ctx = two_chain();
  hp_solution sol = solve_hp(ctx, multi_index{{8, 8}});
  complex z{real(0.5), real(2L)};
  for (auto _ : state) {
    complex v = evaluate_form(sol, ctx.table(), 0, z);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_evaluate_form);

}  // namespace

BENCHMARK_MAIN();
