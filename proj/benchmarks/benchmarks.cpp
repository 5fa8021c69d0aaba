#include <benchmark/benchmark.h>

#include "grainstat/animals.hpp"
#include "grainstat/ccl.hpp"
#include "grainstat/grayfilter.hpp"
#include "grainstat/image.hpp"
#include "grainstat/morpho.hpp"
#include "grainstat/probcalc.hpp"
#include "grainstat/rng.hpp"

using namespace grainstat;

namespace {

BinaryImage random_binary(int side, double density, std::uint64_t seed) {
    BinaryImage image(side, side, Boundary::torus);
    rng::Xoshiro256ss gen(seed);
    for (auto& b : image.bits)
        b = gen.uniform() < density ? 1 : 0;
    return image;
}

GrayImage random_gray(int side, std::uint64_t seed) {
    GrayImage image(side, side);
    rng::Xoshiro256ss gen(seed);
    for (auto& v : image.levels)
        v = static_cast<std::uint8_t>(gen.below(256));
    return image;
}

void BM_EnumerateAnimals(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(animals::enumerate_animals(k));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnumerateAnimals)->DenseRange(8, 12);

void BM_LabelComponents(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const auto image = random_binary(side, 0.35, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(ccl::label_components(image, 1));
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_LabelComponents)->Arg(128)->Arg(256)->Arg(512);

void BM_RemoveSmallComponents(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const auto image = random_binary(side, 0.1, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(morpho::remove_small_components(image, 1, 14));
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_RemoveSmallComponents)->Arg(256)->Arg(512);

void BM_DenoiseBinary(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    static const auto table = animals::build_table(12);
    const auto plan =
        probcalc::make_denoise_plan(side, side, 0.1, 0.1, 0.01, table);
    const auto image = random_binary(side, 0.1, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(morpho::denoise_binary(image, plan));
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_DenoiseBinary)->Arg(256)->Arg(512);

void BM_DecomposeReconstruct(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const auto image = random_gray(side, 4);
    for (auto _ : state) {
        const auto stack = grayfilter::decompose(image);
        benchmark::DoNotOptimize(grayfilter::reconstruct(stack));
    }
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_DecomposeReconstruct)->Arg(64)->Arg(128);

} // namespace

BENCHMARK_MAIN();
