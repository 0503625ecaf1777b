#include <benchmark/benchmark.h>

#include "resnet/lattice.hpp"

using namespace resnet;

static void BM_MonopoleEnergy3d(benchmark::State& state) {
    TorusQuadrature q = TorusQuadrature::defaults(3);
    q.refinements = static_cast<int>(state.range(0));
    for (auto _ : state) {
        QuadratureValue v = monopole_energy(3, q);
        benchmark::DoNotOptimize(v.value);
    }
}
BENCHMARK(BM_MonopoleEnergy3d)->Arg(1)->Arg(2)->Arg(3);

static void BM_Resistance2d(benchmark::State& state) {
    const std::vector<int> o{0, 0}, x{1, 0};
    const TorusQuadrature q = TorusQuadrature::defaults(2);
    for (auto _ : state) {
        QuadratureValue v = lattice_resistance(2, o, x, q);
        benchmark::DoNotOptimize(v.value);
    }
}
BENCHMARK(BM_Resistance2d);

static void BM_TransienceProbe4d(benchmark::State& state) {
    for (auto _ : state) {
        TransienceReport rep = transience_probe(4);
        benchmark::DoNotOptimize(rep.level_values);
    }
}
BENCHMARK(BM_TransienceProbe4d);

static void BM_Ell2Dipole(benchmark::State& state) {
    const TorusQuadrature q = TorusQuadrature::defaults(2);
    for (auto _ : state) {
        Ell2Report rep = ell2_membership_probe(LatticeFunctionKind::dipole, 2,
                                               {2, 4, 8}, q);
        benchmark::DoNotOptimize(rep.partial_sums);
    }
}
BENCHMARK(BM_Ell2Dipole);
