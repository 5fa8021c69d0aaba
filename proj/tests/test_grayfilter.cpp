#include <algorithm>

#include "doctest.h"
#include "grainstat/animals.hpp"
#include "grainstat/errors.hpp"
#include "grainstat/grayfilter.hpp"
#include "grainstat/image.hpp"
#include "helpers.hpp"

using namespace grainstat;

namespace {

const animals::AnimalTable& table12() {
    static const auto table = animals::build_table(12);
    return table;
}

} // namespace

TEST_CASE("decomposition slices a constant image at its own level") {
    GrayImage image(6, 4);
    std::fill(image.levels.begin(), image.levels.end(), std::uint8_t{7});
    const auto stack = grayfilter::decompose(image);

    REQUIRE(stack.slices.size() == 255);
    CHECK(stack.width == 6);
    CHECK(stack.height == 4);
    for (int lambda = 1; lambda <= 255; ++lambda) {
        const auto& slice = stack.slice(lambda);
        const auto expected = static_cast<std::uint8_t>(lambda <= 7 ? 1 : 0);
        CHECK(std::count(slice.bits.begin(), slice.bits.end(), expected)
              == static_cast<std::ptrdiff_t>(slice.bits.size()));
    }
}

TEST_CASE("level zero pixels appear in no slice") {
    GrayImage image(3, 1);
    image.levels = {0, 1, 255};
    const auto stack = grayfilter::decompose(image);
    for (int lambda = 1; lambda <= 255; ++lambda) {
        CHECK_FALSE(stack.slice(lambda).at(0, 0));
        CHECK(stack.slice(lambda).at(2, 0));
    }
    CHECK(stack.slice(1).at(1, 0));
    CHECK_FALSE(stack.slice(2).at(1, 0));
}

TEST_CASE("reconstruction inverts decomposition exactly") {
    for (int trial = 0; trial < 25; ++trial) {
        const int w = 1 + trial % 32;
        const int h = 1 + (trial * 7) % 32;
        const auto image = helpers::random_gray(w, h, 500 + trial);
        CHECK(grayfilter::reconstruct(grayfilter::decompose(image)) == image);
    }
}

TEST_CASE("reconstruction sums arbitrary stacks pixel by pixel") {
    GrayImage image(5, 5);
    std::fill(image.levels.begin(), image.levels.end(), std::uint8_t{100});
    auto stack = grayfilter::decompose(image);

    // Break the nesting: a pixel black at lambda = 200 but white at 100.
    stack.slices[199].set(2, 2, 1);
    stack.slices[99].set(2, 2, 0);
    const auto summed = grayfilter::reconstruct(stack);
    CHECK(summed.at(2, 2) == 100); // one slice gained, one lost
    CHECK(summed.at(0, 0) == 100);
    CHECK(grayfilter::nesting_fraction(stack) < 1.0);
}

TEST_CASE("decomposed stacks are perfectly nested") {
    const auto image = helpers::random_gray(24, 24, 321);
    CHECK(grayfilter::nesting_fraction(grayfilter::decompose(image)) == 1.0);
}

TEST_CASE("per-level densities follow the level fractions") {
    const auto [p1, q1] = grayfilter::level_densities(0.2, 64);
    CHECK(p1 == doctest::Approx(0.2 * 64 / 256.0));
    CHECK(q1 == doctest::Approx(0.2 * 192 / 256.0));

    // The 0-to-1 density at lambda equals the 1-to-0 density at 256 - lambda.
    for (int lambda : {1, 50, 128, 200, 255}) {
        const auto [p_lo, q_lo] = grayfilter::level_densities(0.3, lambda);
        const auto [p_hi, q_hi] = grayfilter::level_densities(0.3, 256 - lambda);
        CHECK(q_lo == doctest::Approx(p_hi));
        CHECK(q_hi == doctest::Approx(p_lo));
    }

    CHECK_THROWS_AS(grayfilter::level_densities(0.2, 0), ParamError);
    CHECK_THROWS_AS(grayfilter::level_densities(0.2, 256), ParamError);
    CHECK_THROWS_AS(grayfilter::level_densities(-0.1, 10), ParamError);
}

TEST_CASE("a zero noise density makes the gray filter the identity") {
    const auto image = helpers::random_gray(32, 32, 77);
    CHECK(grayfilter::denoise_gray(image, 0.0, 0.01, table12()) == image);
}

TEST_CASE("isolated impulses on a flat image are removed exactly") {
    GrayImage image(64, 64);
    std::fill(image.levels.begin(), image.levels.end(), std::uint8_t{128});
    auto spotted = image;
    spotted.levels[spotted.index(3, 3)] = 0;
    spotted.levels[spotted.index(40, 9)] = 255;
    spotted.levels[spotted.index(20, 20)] = 37;

    // Every slice sees each spot as a single-pixel component, far below the
    // slice threshold, so the filter restores the flat image exactly.
    const auto cleaned = grayfilter::denoise_gray(spotted, 0.1, 0.01, table12());
    CHECK(cleaned == image);
}

TEST_CASE("the threaded filter matches the sequential one") {
    const auto image = helpers::random_gray(48, 48, 1234);
    const auto one = grayfilter::denoise_gray(image, 0.08, 0.01, table12(), 1);
    const auto four = grayfilter::denoise_gray(image, 0.08, 0.01, table12(), 4);
    CHECK(one == four);
}

TEST_CASE("filtered stacks of noisy images keep a high nesting fraction") {
    GrayImage image(64, 64);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x)
            image.levels[image.index(x, y)] =
                static_cast<std::uint8_t>(x < 32 ? 60 : 180);

    rng::Xoshiro256ss gen(42);
    auto noisy = image;
    for (auto& v : noisy.levels)
        if (gen.uniform() < 0.1)
            v = static_cast<std::uint8_t>(gen.below(256));

    const auto stack = grayfilter::denoise_gray_stack(noisy, 0.1, 0.01, table12());
    CHECK(grayfilter::nesting_fraction(stack) > 0.9);
}

TEST_CASE("reconstruction rejects malformed stacks") {
    const auto image = helpers::random_gray(8, 8, 3);
    auto stack = grayfilter::decompose(image);
    stack.slices.pop_back();
    CHECK_THROWS_AS(grayfilter::reconstruct(stack), ParamError);
    CHECK_THROWS_AS(grayfilter::nesting_fraction(stack), ParamError);
}
