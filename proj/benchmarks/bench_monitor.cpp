#include <benchmark/benchmark.h>

#include "stlkern/formula_gen.hpp"
#include "stlkern/mu0.hpp"
#include "stlkern/robustness.hpp"

using namespace stlkern;

namespace {

std::vector<FormulaPtr> bench_corpus(std::size_t count) {
    FormulaGenConfig cfg;
    cfg.seed = 7;
    return sample_corpus(cfg, count);
}

Trajectory bench_trajectory() {
    Mu0Config cfg;
    cfg.seed = 9;
    return sample_mu0_one(cfg, 0);
}

void BM_RobustnessSignal(benchmark::State& state) {
    const std::vector<FormulaPtr> corpus = bench_corpus(64);
    const Trajectory xi = bench_trajectory();
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(robustness_signal(*corpus[i], xi));
        i = (i + 1) % corpus.size();
    }
}
BENCHMARK(BM_RobustnessSignal);

void BM_BooleanSignal(benchmark::State& state) {
    const std::vector<FormulaPtr> corpus = bench_corpus(64);
    const Trajectory xi = bench_trajectory();
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(boolean_signal(*corpus[i], xi));
        i = (i + 1) % corpus.size();
    }
}
BENCHMARK(BM_BooleanSignal);

void BM_WindowedUntil(benchmark::State& state) {
    const FormulaPtr f = make_until(make_atom(AtomPolarity::GreaterEqual, 0.0),
                                    make_atom(AtomPolarity::LessEqual, 1.0),
                                    TimeWindow{0.0, 10.0});
    const Trajectory xi = bench_trajectory();
    for (auto _ : state) {
        benchmark::DoNotOptimize(robustness_signal(*f, xi));
    }
}
BENCHMARK(BM_WindowedUntil);

}  // namespace
