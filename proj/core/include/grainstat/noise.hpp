#pragma once

#include <cstdint>

#include "grainstat/image.hpp"

namespace grainstat::noise {

struct NoiseSpec {
    double p = 0.0; // probability a 1-pixel flips to 0
    double q = 0.0; // probability a 0-pixel flips to 1
    std::uint64_t seed = 0;
};

// Independent per-pixel impulse noise on a binary image.  One uniform draw
// per pixel in row-major order, so a given seed reproduces bit-identically
// everywhere.
BinaryImage corrupt_binary(const BinaryImage& image, const NoiseSpec& spec);

// Impulse noise on a gray image: each pixel is hit with probability p and,
// when hit, replaced by a level drawn uniformly from 0..255 (which may equal
// the original).  Row-major; the level draw happens only for hit pixels.
GrayImage corrupt_gray(const GrayImage& image, double p, std::uint64_t seed);

} // namespace grainstat::noise
