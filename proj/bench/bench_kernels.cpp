#include <benchmark/benchmark.h>

#include <random>

#include "qseries/registry.hpp"

using namespace qs;

namespace {

LaurentSeries dense(long len, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 9);
    std::vector<Rat> c(static_cast<std::size_t>(len));
    for (auto& x : c) {
        x = Rat(num(rng)) / den(rng);
    }
    c[0] = 1;
    return LaurentSeries::from_coeffs(0, c, LaurentSeries::exact);
}

void series_product(benchmark::State& state, bool parallel) {
    long len = state.range(0);
    LaurentSeries a = dense(len, 1), b = dense(len, 2);
    for (auto _ : state) {
        LaurentSeries p = parallel ? ls_mul_parallel(a, b) : ls_mul_serial(a, b);
        benchmark::DoNotOptimize(p);
    }
    state.SetComplexityN(len);
}

void catalog_verification(benchmark::State& state, bool parallel) {
    static const Catalog c = load_catalog(default_catalog_path());
    long order = state.range(0);
    for (auto _ : state) {
        auto reps = parallel ? verify_all(c.records, order, true) : verify_all_serial(c.records, order);
        benchmark::DoNotOptimize(reps);
    }
}

} // namespace

BENCHMARK_CAPTURE(series_product, serial, false)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(series_product, parallel, true)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(catalog_verification, serial, false)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK_CAPTURE(catalog_verification, parallel, true)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond)->Iterations(2)->UseRealTime();

BENCHMARK_MAIN();
