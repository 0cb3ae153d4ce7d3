// Parallel kernels against their serial references.

#include "prl/fourspace.hpp"
#include "prl/stability.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace prl;

namespace {

// Generic 2- and 3-dimensional subspaces of C^5.
SubspaceRep search_rep() {
    std::mt19937_64 rng(1);
    std::vector<linalg::Matrix> spans;
    for (int i = 0; i < 4; ++i) spans.push_back(linalg::random_gaussian(5, 2 + i % 2, rng));
    return make_rep(primitive_poset({1, 1, 1, 1}), 5, spans);
}

const Weight& search_weight() {
    static const Weight w(Rational(2), {Rational(1), Rational(1), Rational(1), Rational(1)});
    return w;
}

std::vector<std::optional<linalg::Complex>> sweep_grid() {
    std::vector<std::optional<linalg::Complex>> grid;
    for (int k = 0; k < 32; ++k) grid.emplace_back(linalg::Complex(2.0 + 0.25 * k, 0.5 * (k % 5) - 1.0));
    return grid;
}

void BM_destabilizer_parallel(benchmark::State& state) {
    const SubspaceRep rep = search_rep();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            randomized_destabilizer_search(rep, search_weight(), static_cast<int>(state.range(0)), 3, 1e-9));
    }
}

void BM_destabilizer_serial(benchmark::State& state) {
    const SubspaceRep rep = search_rep();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            randomized_destabilizer_search_serial(rep, search_weight(), static_cast<int>(state.range(0)), 3, 1e-9));
    }
}

void BM_sweep_parallel(benchmark::State& state) {
    const auto grid = sweep_grid();
    FlowOptions o;
    o.max_iter = 2000;
    for (auto _ : state) benchmark::DoNotOptimize(fourspace_sweep(grid, search_weight(), o));
}

void BM_sweep_serial(benchmark::State& state) {
    const auto grid = sweep_grid();
    FlowOptions o;
    o.max_iter = 2000;
    for (auto _ : state) benchmark::DoNotOptimize(fourspace_sweep_serial(grid, search_weight(), o));
}

}  // namespace

BENCHMARK(BM_destabilizer_parallel)->Arg(50)->Arg(200)->Arg(800)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_destabilizer_serial)->Arg(50)->Arg(200)->Arg(800)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_parallel)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_serial)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
