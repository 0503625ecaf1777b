#include <benchmark/benchmark.h>

#include "resnet/network.hpp"
#include "resnet/operators.hpp"
#include "resnet/solvers.hpp"

using namespace resnet;

static void BM_CgLattice2d(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const WiredCollapse wc = ExhaustionSpec::lattice(2).wired_truncation(k);
    GroundedSystem gs(wc.network);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(gs.dim());
    b[0] = 1.0;
    for (auto _ : state) {
        CgResult res = cg_solve(gs.matrix(), b);
        benchmark::DoNotOptimize(res.x);
    }
    state.counters["n"] = gs.dim();
}
BENCHMARK(BM_CgLattice2d)->Arg(8)->Arg(16)->Arg(32);

static void BM_DenseEigGrounded(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const WiredCollapse wc = ExhaustionSpec::lattice(2).wired_truncation(k);
    GroundedSystem gs(wc.network);
    for (auto _ : state) {
        SpectralDecomposition eig = dense_eig(gs.matrix());
        benchmark::DoNotOptimize(eig.eigenvalues);
    }
    state.counters["n"] = gs.dim();
}
BENCHMARK(BM_DenseEigGrounded)->Arg(6)->Arg(10);

static void BM_LanczosTree(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    const WiredCollapse wc = ExhaustionSpec::tree().wired_truncation(depth);
    GroundedSystem gs(wc.network);
    for (auto _ : state) {
        LanczosResult res = lanczos_smallest(gs.matrix(), 200, 1);
        benchmark::DoNotOptimize(res.value);
    }
    state.counters["n"] = gs.dim();
}
BENCHMARK(BM_LanczosTree)->Arg(8)->Arg(10)->Arg(12);

static void BM_GramMatrix(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const WiredCollapse wc = ExhaustionSpec::lattice(2).wired_truncation(k);
    for (auto _ : state) {
        GroundedSystem gs(wc.network);
        benchmark::DoNotOptimize(gram_matrix(gs));
    }
}
BENCHMARK(BM_GramMatrix)->Arg(6)->Arg(10);
