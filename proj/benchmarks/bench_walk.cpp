#include <benchmark/benchmark.h>

#include "resnet/network.hpp"
#include "resnet/walk.hpp"

using namespace resnet;

static void BM_HittingMc(benchmark::State& state) {
    const WiredCollapse wc = ExhaustionSpec::lattice(2).wired_truncation(6);
    const int o = wc.network.vertex_by_label("0,0");
    const int x = wc.network.vertex_by_label("1,0");
    const std::int64_t episodes = state.range(0);
    for (auto _ : state) {
        WalkEstimate est = hitting_probability_mc(wc.network, o, x, episodes, 100000, 7);
        benchmark::DoNotOptimize(est.p_hat);
    }
    state.SetItemsProcessed(state.iterations() * episodes);
}
BENCHMARK(BM_HittingMc)->Arg(10000)->Arg(100000);

static void BM_HittingExact(benchmark::State& state) {
    const WiredCollapse wc = ExhaustionSpec::lattice(2).wired_truncation(10);
    const int o = wc.network.vertex_by_label("0,0");
    const int x = wc.network.vertex_by_label("3,0");
    for (auto _ : state) {
        benchmark::DoNotOptimize(hitting_probability_exact(wc.network, o, x));
    }
}
BENCHMARK(BM_HittingExact);
