#include <benchmark/benchmark.h>

#include "coneq/galois.hpp"
#include "coneq/random_set.hpp"
#include "oracles.hpp"

using namespace coneq;

namespace {

std::vector<Vec> sample_2d(int n) {
    oracle::Rng rng(99);
    return oracle::random_points(rng, n, 2, -2.0, 2.0);
}

void BM_LowerCdfSweep(benchmark::State& state) {
    ConeCdf c(EmpiricalSample(sample_2d(static_cast<int>(state.range(0)))),
              ConvexCone::orthant(2));
    oracle::Rng rng(7);
    Vec z = {rng.range(-2.0, 2.0), rng.range(-2.0, 2.0)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(c.lower_cdf(z));
        z[0] += 1e-9;  // defeat caching by the optimizer
    }
}
BENCHMARK(BM_LowerCdfSweep)->Arg(64)->Arg(256)->Arg(1024);

void BM_LowerCdfGrid(benchmark::State& state) {
    ConeCdf c(EmpiricalSample(sample_2d(static_cast<int>(state.range(0)))),
              ConvexCone::orthant(2), 64, false);
    oracle::Rng rng(7);
    Vec z = {rng.range(-2.0, 2.0), rng.range(-2.0, 2.0)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(c.lower_cdf(z));
        z[0] += 1e-9;
    }
}
BENCHMARK(BM_LowerCdfGrid)->Arg(64)->Arg(256)->Arg(1024);

void BM_QuantileRegion(benchmark::State& state) {
    QuantileFn q(ConeCdf(EmpiricalSample(sample_2d(256)), ConvexCone::orthant(2),
                         static_cast<int>(state.range(0))));
    double p = 0.25;
    for (auto _ : state) {
        benchmark::DoNotOptimize(q.lower_quantile(p));
        p = p >= 0.75 ? 0.25 : p + 0.001;
    }
}
BENCHMARK(BM_QuantileRegion)->Arg(16)->Arg(64)->Arg(256);

void BM_GenrepMembership(benchmark::State& state) {
    oracle::Rng rng(11);
    Region r = Region::genrep(ConvexCone::orthant(2),
                              oracle::random_points(rng, static_cast<int>(state.range(0)), 2,
                                                    -1.0, 1.0));
    Vec z = {0.3, 0.4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(region_member(r, z));
        z[0] = z[0] > 1.0 ? -1.0 : z[0] + 1e-6;
    }
}
BENCHMARK(BM_GenrepMembership)->Arg(4)->Arg(16)->Arg(64);

void BM_CapacityMc(benchmark::State& state) {
    QuantileFn q(ConeCdf(EmpiricalSample(sample_2d(64)), ConvexCone::orthant(2)));
    oracle::Rng rng(13);
    CompactTestSet k = make_test_set(oracle::random_points(rng, 5, 2, -1.0, 2.0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(capacity_mc(q, k, static_cast<long>(state.range(0)),
                                             SeededRng(seed++)));
    }
}
BENCHMARK(BM_CapacityMc)->Arg(1000)->Arg(20000);

}  // namespace

BENCHMARK_MAIN();
