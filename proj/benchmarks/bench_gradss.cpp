#include <benchmark/benchmark.h>

#include "gradss/homalg.hpp"
#include "gradss/specseq.hpp"
#include "gradss/thhku.hpp"

using namespace gradss;

namespace {

void BM_KoszulTor(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            homalg::koszul_tor(homalg::BaseRing::zp_poly(5), homalg::CyclicModule::fp(), homalg::CyclicModule::zp(), n));
}
BENCHMARK(BM_KoszulTor)->Arg(40)->Arg(200);

void BM_Step2(benchmark::State& state)
{
    const auto p = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(thhku::step2_v0(p, 100));
}
BENCHMARK(BM_Step2)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_Step3(benchmark::State& state)
{
    const auto p = static_cast<std::uint32_t>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(thhku::step3_v1(p, n));
}
BENCHMARK(BM_Step3)->Args({5, 60})->Args({5, 100})->Args({7, 100})->Unit(benchmark::kMillisecond);

void BM_ExactCouple(benchmark::State& state)
{
    std::vector<specseq::FilteredComplex> complexes;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        complexes.push_back(specseq::random_filtered_complex(seed, 5, 5, 40));
    for (auto _ : state)
        for (const auto& fc : complexes)
            benchmark::DoNotOptimize(specseq::exact_couple_run(fc));
}
BENCHMARK(BM_ExactCouple)->Unit(benchmark::kMillisecond);

void BM_Hochschild(benchmark::State& state)
{
    algebra::Presentation a(5, {algebra::GeneratorSpec::truncated("u", 4, {0, 2})}, 12);
    for (auto _ : state)
        benchmark::DoNotOptimize(homalg::hochschild_homology(a, 2, 12));
}
BENCHMARK(BM_Hochschild)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
