#pragma once

#include <cstdint>

#include "grainstat/image.hpp"
#include "grainstat/rng.hpp"

namespace helpers {

inline grainstat::BinaryImage random_binary(
    int w, int h, double density, std::uint64_t seed,
    grainstat::Boundary boundary = grainstat::Boundary::plain) {
    grainstat::BinaryImage image(w, h, boundary);
    grainstat::rng::Xoshiro256ss gen(seed);
    for (auto& b : image.bits)
        b = gen.uniform() < density ? 1 : 0;
    return image;
}

inline grainstat::GrayImage random_gray(int w, int h, std::uint64_t seed) {
    grainstat::GrayImage image(w, h);
    grainstat::rng::Xoshiro256ss gen(seed);
    for (auto& v : image.levels)
        v = static_cast<std::uint8_t>(gen.below(256));
    return image;
}

// Alternating block pattern, value 1 on the even diagonal blocks.
inline grainstat::BinaryImage checkerboard(
    int side, int block,
    grainstat::Boundary boundary = grainstat::Boundary::plain) {
    grainstat::BinaryImage image(side, side, boundary);
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x)
            image.set(x, y, ((x / block + y / block) % 2 == 0) ? 1 : 0);
    return image;
}

} // namespace helpers
