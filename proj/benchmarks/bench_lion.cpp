#include <benchmark/benchmark.h>

#include <random>

#include "lion/engine.hpp"
#include "lion/neighbors.hpp"
#include "lion/outlier_pool.hpp"
#include "lion/percentile.hpp"
#include "lion/power_select.hpp"

using namespace lion;

namespace {

struct Data {
    Matrix x;
    Matrix y;
};

// Gaussian clusters in 30-D with a matching 2-D layout.
Data clusters(std::size_t n, std::uint64_t seed) {
    constexpr std::size_t kDims = 30;
    constexpr std::size_t kClusters = 10;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> cx(kClusters * kDims), cy(kClusters * 2);
    for (double& v : cx) v = 8.0 * g(rng);
    for (double& v : cy) v = 20.0 * g(rng);
    std::vector<double> x(n * kDims), y(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = i % kClusters;
        for (std::size_t j = 0; j < kDims; ++j) x[i * kDims + j] = cx[c * kDims + j] + 0.3 * g(rng);
        for (std::size_t j = 0; j < 2; ++j) y[i * 2 + j] = cy[c * 2 + j] + g(rng);
    }
    return {Matrix(n, kDims, std::move(x)), Matrix(n, 2, std::move(y))};
}

}  // namespace

static void BM_RadiusQuery(benchmark::State& state) {
    const Data d = clusters(static_cast<std::size_t>(state.range(0)), 1);
    const NeighborIndex idx(d.x);
    const double r = percentile(idx.nn_distances(), 99.0);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(idx.radius_query(d.x.row(i), r));
        i = (i + 97) % d.x.rows();
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RadiusQuery)->RangeMultiplier(4)->Range(500, 32000)->Complexity();

static void BM_MapOne(benchmark::State& state) {
    const Data d = clusters(static_cast<std::size_t>(state.range(0)), 2);
    LionConfig config;
    config.power = 8.0;
    LionModel model = fit(d.x, d.y, config);
    Rng rng(5);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.map_one(d.x.row(i), rng));
        i = (i + 97) % d.x.rows();
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MapOne)->RangeMultiplier(4)->Range(500, 32000)->Complexity();

static void BM_PoolBuild(benchmark::State& state) {
    const Data d = clusters(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(OutlierPositionPool::build(d.y, 2.0, 7));
    }
}
BENCHMARK(BM_PoolBuild)->RangeMultiplier(4)->Range(500, 32000);

static void BM_SelectPower(benchmark::State& state) {
    const Data d = clusters(static_cast<std::size_t>(state.range(0)), 4);
    const double r = percentile(NeighborIndex(d.x).nn_distances(), 99.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(select_power(r, d.x, d.y, PowerGrid{}));
    }
}
BENCHMARK(BM_SelectPower)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
