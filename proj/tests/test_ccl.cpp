#include <algorithm>
#include <map>
#include <vector>

#include "doctest.h"
#include "grainstat/ccl.hpp"
#include "grainstat/errors.hpp"
#include "grainstat/image.hpp"
#include "grainstat/rng.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace grainstat;

namespace {

BinaryImage row_image(const std::vector<std::uint8_t>& bits, Boundary boundary) {
    BinaryImage image(static_cast<int>(bits.size()), 1, boundary);
    image.bits = bits;
    return image;
}

} // namespace

TEST_CASE("a single row splits and merges with the boundary rule") {
    const std::vector<std::uint8_t> bits = {1, 0, 0, 1};

    const auto plain = ccl::label_components(row_image(bits, Boundary::plain), 1);
    CHECK(plain.count == 2);
    CHECK(plain.sizes[plain.labels[0]] == 1);
    CHECK(plain.sizes[plain.labels[3]] == 1);

    const auto torus = ccl::label_components(row_image(bits, Boundary::torus), 1);
    CHECK(torus.count == 1);
    CHECK(torus.labels[0] == torus.labels[3]);
    CHECK(torus.sizes[1] == 2);
}

TEST_CASE("columns behave like rows") {
    BinaryImage image(1, 4, Boundary::torus);
    image.bits = {1, 0, 0, 1};
    const auto set = ccl::label_components(image, 1);
    CHECK(set.count == 1);
    CHECK(set.sizes[1] == 2);
}

TEST_CASE("diagonal neighbors stay separate under 4-connectivity") {
    BinaryImage image(2, 2, Boundary::plain);
    image.set(0, 0, 1);
    image.set(1, 1, 1);
    const auto set = ccl::label_components(image, 1);
    CHECK(set.count == 2);
}

TEST_CASE("labeling the complement color finds the background components") {
    auto image = helpers::checkerboard(4, 2);
    const auto ones = ccl::label_components(image, 1);
    const auto zeros = ccl::label_components(image, 0);
    CHECK(ones.count == 2);
    CHECK(zeros.count == 2);
    for (int i = 0; i < 16; ++i) {
        CHECK((ones.labels[i] > 0) == (image.bits[i] == 1));
        CHECK((zeros.labels[i] > 0) == (image.bits[i] == 0));
    }
}

TEST_CASE("uniform images produce zero or one component") {
    BinaryImage blank(5, 3, Boundary::plain);
    const auto none = ccl::label_components(blank, 1);
    CHECK(none.count == 0);
    CHECK(ccl::component_size_histogram(none).empty());

    std::fill(blank.bits.begin(), blank.bits.end(), std::uint8_t{1});
    const auto all = ccl::label_components(blank, 1);
    CHECK(all.count == 1);
    CHECK(all.sizes[1] == 15);
    const auto histogram = ccl::component_size_histogram(all);
    CHECK(histogram.size() == 1);
    CHECK(histogram.at(15) == 1);
}

TEST_CASE("labels are dense and sizes sum to the pixel count of the color") {
    const auto image = helpers::random_binary(40, 25, 0.4, 17, Boundary::torus);
    const auto set = ccl::label_components(image, 1);

    std::vector<std::int64_t> recount(set.count + 1, 0);
    std::int64_t colored = 0;
    for (std::size_t i = 0; i < image.bits.size(); ++i) {
        REQUIRE(set.labels[i] >= 0);
        REQUIRE(set.labels[i] <= set.count);
        CHECK((set.labels[i] > 0) == (image.bits[i] == 1));
        if (set.labels[i] > 0) {
            ++recount[set.labels[i]];
            ++colored;
        }
    }
    std::int64_t total = 0;
    for (int label = 1; label <= set.count; ++label) {
        CHECK(recount[label] == set.sizes[label]);
        CHECK(set.sizes[label] > 0);
        total += set.sizes[label];
    }
    CHECK(total == colored);
}

TEST_CASE("union-find labeling matches a flood-fill oracle on random images") {
    rng::Xoshiro256ss gen(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int w = 1 + static_cast<int>(gen.below(64));
        const int h = 1 + static_cast<int>(gen.below(64));
        const double density = 0.1 + 0.2 * static_cast<double>(gen.below(4));
        const auto boundary = (trial % 2 == 0) ? Boundary::plain : Boundary::torus;
        const int color = trial % 4 < 2 ? 1 : 0;
        const auto image = helpers::random_binary(w, h, density, 1000 + trial, boundary);

        const auto fast = ccl::label_components(image, color);
        const auto slow = oracles::bfs_label_components(image, color);

        CAPTURE(trial);
        CAPTURE(w);
        CAPTURE(h);
        REQUIRE(fast.count == slow.count);
        CHECK(oracles::same_partition(fast, slow));

        auto fast_sizes = fast.sizes;
        auto slow_sizes = slow.sizes;
        std::sort(fast_sizes.begin() + 1, fast_sizes.end());
        std::sort(slow_sizes.begin() + 1, slow_sizes.end());
        CHECK(fast_sizes == slow_sizes);
    }
}

TEST_CASE("torus labeling is invariant under cyclic shifts") {
    const auto image = helpers::random_binary(32, 32, 0.35, 7, Boundary::torus);
    const auto reference = ccl::component_size_histogram(ccl::label_components(image, 1));

    for (int shift : {1, 5, 16, 31}) {
        BinaryImage moved(32, 32, Boundary::torus);
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 32; ++x)
                moved.set(x, y, image.at((x + shift) % 32, (y + 3 * shift) % 32));
        const auto shifted = ccl::component_size_histogram(ccl::label_components(moved, 1));
        CHECK(shifted == reference);
    }
}

TEST_CASE("only binary colors are accepted") {
    const auto image = helpers::random_binary(4, 4, 0.5, 3);
    CHECK_THROWS_AS(ccl::label_components(image, 2), ParamError);
    CHECK_THROWS_AS(ccl::label_components(image, -1), ParamError);
}
