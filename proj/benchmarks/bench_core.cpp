#include <benchmark/benchmark.h>

#include "inertia_lab/constructions.hpp"
#include "inertia_lab/entrywise.hpp"
#include "inertia_lab/harness.hpp"
#include "inertia_lab/linalg.hpp"
#include "inertia_lab/rng.hpp"

using namespace inertia_lab;
using linalg::SymMatrix;

namespace {

SymMatrix random_sym(std::size_t n, std::uint64_t seed) {
    Rng rng(seed, 0);
    return SymMatrix::generate(n, [&](std::size_t, std::size_t) { return rng.uniform(-1, 1); });
}

void BM_EigSym(benchmark::State& state) {
    const SymMatrix a = random_sym(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(linalg::eig_sym(a));
}
BENCHMARK(BM_EigSym)->RangeMultiplier(2)->Range(4, 64);

void BM_Inertia(benchmark::State& state) {
    const SymMatrix a = random_sym(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(linalg::inertia(a));
}
BENCHMARK(BM_Inertia)->RangeMultiplier(2)->Range(4, 64);

void BM_ApplySeries(benchmark::State& state) {
    const SymMatrix a = random_sym(static_cast<std::size_t>(state.range(0)), 3);
    const auto f = entrywise::FunctionSpec::polynomial({1, 1, 0.5, 1.0 / 6, 1.0 / 24, 1.0 / 120});
    const auto dom = entrywise::DomainSpec::two_sided(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(entrywise::apply_entrywise(f, a, dom));
}
BENCHMARK(BM_ApplySeries)->RangeMultiplier(2)->Range(4, 64);

void BM_Sampler(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto dom = entrywise::DomainSpec::open_positive(1.0);
    Rng rng(4, 0);
    for (auto _ : state) benchmark::DoNotOptimize(harness::sample_with_inertia(n, 2, dom, rng));
}
BENCHMARK(BM_Sampler)->Arg(4)->Arg(8)->Arg(16);

void BM_JudiciousPencil(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(linalg::inertia(constructions::judicious_pencil(k, 2.0)));
}
BENCHMARK(BM_JudiciousPencil)->DenseRange(1, 4);

void BM_VerifyHomothety(benchmark::State& state) {
    harness::TrialConfig cfg;
    cfg.k = entrywise::AdmissibleK({2});
    cfg.l = 2;
    cfg.n_min = 2;
    cfg.n_max = 8;
    cfg.trials = static_cast<std::size_t>(state.range(0));
    const auto f = entrywise::FunctionSpec::homothety(2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(harness::verify_forward(entrywise::Theorem::class_preserver, f, cfg));
}
BENCHMARK(BM_VerifyHomothety)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_FalsifySquare(benchmark::State& state) {
    harness::TrialConfig cfg;
    cfg.k = entrywise::AdmissibleK({2});
    cfg.l = 2;
    cfg.n_min = 2;
    const auto f = entrywise::FunctionSpec::polynomial({0, 0, 1});
    for (auto _ : state)
        benchmark::DoNotOptimize(harness::falsify(entrywise::Theorem::negativity_bound, f, cfg));
}
BENCHMARK(BM_FalsifySquare)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
