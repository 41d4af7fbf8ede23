#include <benchmark/benchmark.h>

#include "stlkern/formula_gen.hpp"
#include "stlkern/mu0.hpp"
#include "stlkern/stochastic.hpp"

using namespace stlkern;

namespace {

void BM_Mu0Sample(benchmark::State& state) {
    Mu0Config cfg;
    cfg.seed = 1;
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_mu0_one(cfg, i++));
    }
}
BENCHMARK(BM_Mu0Sample);

void BM_FormulaSample(benchmark::State& state) {
    FormulaGenConfig cfg;
    std::uint64_t i = 0;
    for (auto _ : state) {
        cfg.seed = i++;
        benchmark::DoNotOptimize(sample_formula(cfg));
    }
}
BENCHMARK(BM_FormulaSample);

void BM_GillespieImmigration(benchmark::State& state) {
    const ReactionNetwork net = builtin_model("immigration");
    SSAConfig cfg;
    std::uint64_t i = 0;
    for (auto _ : state) {
        cfg.seed = i++;
        benchmark::DoNotOptimize(gillespie_simulate(net, cfg));
    }
}
BENCHMARK(BM_GillespieImmigration);

void BM_GillespieIsomerization(benchmark::State& state) {
    const ReactionNetwork net = builtin_model("isomerization");
    SSAConfig cfg;
    std::uint64_t i = 0;
    for (auto _ : state) {
        cfg.seed = i++;
        benchmark::DoNotOptimize(gillespie_simulate(net, cfg));
    }
}
BENCHMARK(BM_GillespieIsomerization);

}  // namespace

BENCHMARK_MAIN();
