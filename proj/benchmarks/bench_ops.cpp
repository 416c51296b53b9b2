#include "coreep/coreep.hpp"

#include <benchmark/benchmark.h>

namespace {

using coreep::ComplexMatrix;
using coreep::GenSpec;
using coreep::Index;

GenSpec spec_for(Index n) {
    GenSpec spec;
    spec.n = n;
    spec.core_rank = n / 2;
    spec.nilpotency_index = 2;
    spec.seed = 42;
    spec.conditioning = 10.0;
    return spec;
}

void bench_rank(benchmark::State& state) {
    const ComplexMatrix a = coreep::matrix_with_structure(spec_for(state.range(0))).matrix;
    const coreep::ToleranceContext tol;
    for (auto _ : state) benchmark::DoNotOptimize(coreep::rank(a, tol));
}
BENCHMARK(bench_rank)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void bench_core_ep_decompose(benchmark::State& state) {
    const ComplexMatrix a = coreep::matrix_with_structure(spec_for(state.range(0))).matrix;
    const coreep::ToleranceContext tol;
    for (auto _ : state) benchmark::DoNotOptimize(coreep::core_ep_decompose(a, tol));
}
BENCHMARK(bench_core_ep_decompose)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void bench_core_ep_inverse(benchmark::State& state) {
    const ComplexMatrix a = coreep::matrix_with_structure(spec_for(state.range(0))).matrix;
    const coreep::ToleranceContext tol;
    for (auto _ : state) benchmark::DoNotOptimize(coreep::core_ep_inverse(a, tol));
}
BENCHMARK(bench_core_ep_inverse)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void bench_le_core_minus(benchmark::State& state) {
    GenSpec spec = spec_for(state.range(0));
    const coreep::OrderPair pair = coreep::order_pair(spec, coreep::Relation::core_minus);
    const coreep::ToleranceContext tol;
    for (auto _ : state) benchmark::DoNotOptimize(coreep::le_core_minus(pair.a, pair.b, tol));
}
BENCHMARK(bench_le_core_minus)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
