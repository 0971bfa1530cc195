#include <benchmark/benchmark.h>

#include "hp/measures.hpp"

using namespace hp;

namespace {

nikishin_generator two_chain() {
  return {{measure_spec::jacobi({real(-1L), real(1L)}, real(-0.5),
                                real(-0.5)),
           measure_spec::jacobi({real(2L), real(3L)}, real(0L), real(0L))}};
}

void bm_moment_table(benchmark::State& state) {
  precision_guard guard(288);
  long budget = state.range(0);
  for (auto _ : state) {
    moment_table table = nikishin_moments(two_chain(), budget, {256, 2, 4});
    benchmark::DoNotOptimize(table.entries);
  }
}
BENCHMARK(bm_moment_table)->Arg(4)->Arg(8)->Arg(16);

void bm_cauchy_transform(benchmark::State& state) {
  precision_guard guard(288);
  static moment_table table = nikishin_moments(two_chain(), 12, {256, 2, 4});
  complex z{real(0.5), real(2L)};
  for (auto _ : state) {
    complex v = cauchy_transform(table, 2, 1, z);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_cauchy_transform);

void bm_tanh_sinh_nodes(benchmark::State& state) {
  long bits = state.range(0);
  precision_guard guard(bits);
  measure_spec cheb =
      measure_spec::jacobi({real(-1L), real(1L)}, real(-0.5), real(-0.5));
  for (auto _ : state) {
    discrete_measure dm = discretize_jacobi(
        cheb.support.a, cheb.support.b, {cheb.alpha, cheb.beta}, 1, 8, bits);
    benchmark::DoNotOptimize(dm.x);
  }
}
BENCHMARK(bm_tanh_sinh_nodes)->Arg(128)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
