#include <benchmark/benchmark.h>

#include "stlkern/formula_gen.hpp"
#include "stlkern/kernel.hpp"
#include "stlkern/mu0.hpp"

using namespace stlkern;

namespace {

void BM_GramNormalized(benchmark::State& state) {
    const std::size_t corpus_size = static_cast<std::size_t>(state.range(0));
    const std::size_t traj_count = static_cast<std::size_t>(state.range(1));
    FormulaGenConfig gen;
    gen.seed = 3;
    const std::vector<FormulaPtr> corpus = sample_corpus(gen, corpus_size);
    Mu0Config mu0;
    mu0.seed = 4;
    const std::vector<Trajectory> batch = sample_mu0(mu0, traj_count);
    for (auto _ : state) {
        KernelSample sample(batch, 4);  // fresh cache per iteration
        benchmark::DoNotOptimize(gram(corpus, sample, GramKind::Normalized));
    }
    state.SetComplexityN(static_cast<benchmark::IterationCount>(corpus_size));
}
BENCHMARK(BM_GramNormalized)
    ->Args({25, 100})
    ->Args({50, 100})
    ->Args({100, 100})
    ->Args({50, 400});

void BM_PairwiseKernelCached(benchmark::State& state) {
    FormulaGenConfig gen;
    gen.seed = 5;
    const std::vector<FormulaPtr> corpus = sample_corpus(gen, 32);
    Mu0Config mu0;
    mu0.seed = 6;
    KernelSample sample(sample_mu0(mu0, 500), 6);
    for (const FormulaPtr& f : corpus) sample.signals(*f);  // warm cache
    std::size_t i = 0;
    for (auto _ : state) {
        const std::size_t a = i % corpus.size();
        const std::size_t b = (i * 7 + 3) % corpus.size();
        benchmark::DoNotOptimize(raw_kernel(*corpus[a], *corpus[b], sample));
        ++i;
    }
}
BENCHMARK(BM_PairwiseKernelCached);

}  // namespace
