#include <benchmark/benchmark.h>

#include "quasivar/congruence.hpp"
#include "quasivar/demorgan.hpp"
#include "quasivar/quasivar.hpp"

using namespace qv;

namespace {

void free_algebra_kernel(benchmark::State& state, Kernel kernel) {
    GeneratorSet gens({catalog("x-trivial")});
    for (auto _ : state) {
        auto f = free_algebra(gens, 1, default_guards(), kernel);
        benchmark::DoNotOptimize(f.algebra.size());
    }
}

void principal_kernel(benchmark::State& state, Kernel kernel) {
    auto a = direct_product({catalog("s5"), catalog("c4"), catalog("d4")});
    for (auto _ : state) {
        auto cons = all_principal_congruences(a, kernel);
        benchmark::DoNotOptimize(cons.size());
    }
}

}  // namespace

BENCHMARK_CAPTURE(free_algebra_kernel, serial, Kernel::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(free_algebra_kernel, parallel, Kernel::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(principal_kernel, serial, Kernel::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(principal_kernel, parallel, Kernel::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
