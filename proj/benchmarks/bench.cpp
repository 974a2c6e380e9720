#include <benchmark/benchmark.h>

#include "catforge/catforge.hpp"

using namespace catforge;

static void BM_WignerFockPoint(benchmark::State& state) {
    const double alpha = static_cast<double>(state.range(0));
    const auto cat = cat_fock(alpha, Parity::Even, fock_dim_for(alpha));
    double y = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wigner_fock(cat, 0.0, y));
        y = y < 0.5 ? y + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_WignerFockPoint)->Arg(2)->Arg(4)->Arg(6);

static void BM_WignerMixPoint(benchmark::State& state) {
    const auto st = ideal_protocol(4.0);
    double y = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wigner_mix(st.state, 0.0, y));
        y = y < 0.5 ? y + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_WignerMixPoint);

static void BM_GpObjective(benchmark::State& state) {
    const GpParams p{1.8, -0.4, 0.2, 0.9, 0.3, 1};
    for (auto _ : state) benchmark::DoNotOptimize(gp_fidelity(4.0, p));
}
BENCHMARK(BM_GpObjective);

static void BM_ThreeModeOracle(benchmark::State& state) {
    const GpParams p{0.5, -0.3, 0.25, 0.6, 0.3, 1};
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_three_mode(p, 24));
}
BENCHMARK(BM_ThreeModeOracle);

static void BM_HomodyneFisherMix(benchmark::State& state) {
    const auto st = ideal_protocol(4.0);
    for (auto _ : state) benchmark::DoNotOptimize(homodyne_fisher(st.state));
}
BENCHMARK(BM_HomodyneFisherMix);

static void BM_LossChannel(benchmark::State& state) {
    const auto cat = cat_fock(3.0, Parity::Even, fock_dim_for(3.0));
    for (auto _ : state) benchmark::DoNotOptimize(loss_fock(cat, 0.9));
}
BENCHMARK(BM_LossChannel);

BENCHMARK_MAIN();
