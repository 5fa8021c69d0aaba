#pragma once

#include <cstdint>
#include <vector>

#include "grainstat/errors.hpp"

namespace grainstat {

// Neighborhood rule at the image border.  Plain stops at the border; torus
// wraps both dimensions, so column n-1 is adjacent to column 0 and likewise
// for rows.  A wrap edge that would connect a pixel to itself (dimension of
// size 1) is ignored.
enum class Boundary { plain, torus };

// Row-major 0/1 raster.  Pixels are stored one per byte; the connectivity
// relation is 4-adjacency under the image's boundary rule.
struct BinaryImage {
    int width = 0;
    int height = 0;
    Boundary boundary = Boundary::plain;
    std::vector<std::uint8_t> bits;

    BinaryImage() = default;
    BinaryImage(int w, int h, Boundary b = Boundary::plain)
        : width(w), height(h), boundary(b) {
        if (w < 1 || h < 1)
            throw ParamError("image dimensions must be at least 1x1");
        bits.assign(static_cast<std::size_t>(w) * h, 0);
    }

    std::size_t size() const { return bits.size(); }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    std::uint8_t at(int x, int y) const { return bits[index(x, y)]; }
    void set(int x, int y, std::uint8_t v) { bits[index(x, y)] = v; }

    // Lookup with torus wrap for out-of-range coordinates; plain images
    // report out-of-range pixels as 0.
    std::uint8_t at_wrapped(int x, int y) const {
        if (x < 0 || x >= width || y < 0 || y >= height) {
            if (boundary == Boundary::plain)
                return 0;
            x %= width;
            if (x < 0) x += width;
            y %= height;
            if (y < 0) y += height;
        }
        return bits[index(x, y)];
    }

    bool operator==(const BinaryImage&) const = default;
};

inline BinaryImage invert(const BinaryImage& in) {
    BinaryImage out = in;
    for (auto& b : out.bits)
        b = static_cast<std::uint8_t>(1 - b);
    return out;
}

// Row-major 8-bit grayscale raster, levels 0..255.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> levels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
        if (w < 1 || h < 1)
            throw ParamError("image dimensions must be at least 1x1");
        levels.assign(static_cast<std::size_t>(w) * h, fill);
    }

    std::size_t size() const { return levels.size(); }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    std::uint8_t at(int x, int y) const { return levels[index(x, y)]; }
    void set(int x, int y, std::uint8_t v) { levels[index(x, y)] = v; }

    bool operator==(const GrayImage&) const = default;
};

} // namespace grainstat
