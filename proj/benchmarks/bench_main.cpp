#include "twinsieve/classify.hpp"
#include "twinsieve/counting.hpp"
#include "twinsieve/oracle.hpp"
#include "twinsieve/progressions.hpp"

#include <benchmark/benchmark.h>

#include <array>

using namespace twinsieve;

static void BM_Classify(benchmark::State& state)
{
    const auto hi = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        std::uint64_t ranks = 0;
        for (std::uint64_t m = 1; m <= hi; ++m) {
            ranks += classify(m).is_twin_rank();
        }
        benchmark::DoNotOptimize(ranks);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Classify)->Arg(10'000)->Arg(100'000);

static void BM_Pi2Exact(benchmark::State& state)
{
    TwinOracle oracle({kDefaultCeiling, std::uint64_t{1} << 18, static_cast<unsigned>(state.range(1))});
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle.pi2_exact(static_cast<std::uint64_t>(state.range(0))));
    }
}
BENCHMARK(BM_Pi2Exact)->Args({10'000'000, 1})->Args({10'000'000, 4})->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_VerifyClassify(benchmark::State& state)
{
    TwinOracle oracle;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle.verify_classify(static_cast<std::uint64_t>(state.range(0))));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VerifyClassify)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_ResidueSet(benchmark::State& state)
{
    const auto p = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(residue_set(p).constants.size());
    }
}
BENCHMARK(BM_ResidueSet)->Arg(11)->Arg(13)->Arg(17)->Unit(benchmark::kMicrosecond);

static void BM_CrtFamily(benchmark::State& state)
{
    const std::array<std::uint64_t, 4> primes{5, 7, 11, 13};
    for (auto _ : state) {
        benchmark::DoNotOptimize(crt_family(primes).members.size());
    }
}
BENCHMARK(BM_CrtFamily);

static void BM_Legendre(benchmark::State& state)
{
    const auto p = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(legendre_pi2(p).estimate);
    }
}
BENCHMARK(BM_Legendre)->Arg(11)->Arg(13)->Arg(17)->Unit(benchmark::kMillisecond);

static void BM_TwinPrimeConstant(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(twin_prime_constant(1e-7));
    }
}
BENCHMARK(BM_TwinPrimeConstant)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
