#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "grainstat/image.hpp"

namespace grainstat::patterns {

struct Offset {
    int x = 0;
    int y = 0;
    auto operator<=>(const Offset&) const = default;
};

// Discrete L1 ball of radius r centered at the origin: 2r^2 + 2r + 1 cells,
// listed row by row.  Radius is capped at 5 so a pattern fits in 64 bits.
struct Ball {
    int radius = 0;
    std::vector<Offset> cells;

    static Ball diamond(int radius);
    int size() const { return static_cast<int>(cells.size()); }

    // Index of (x, y) in cells, -1 when outside the ball.
    int cell_index(int x, int y) const {
        if (std::abs(x) + std::abs(y) > radius)
            return -1;
        return grid_[static_cast<std::size_t>(y + radius) * (2 * radius + 1) +
                     (x + radius)];
    }

private:
    std::vector<int> grid_;
};

// Black/white coloring of a ball, packed as one bit per cell.
class Pattern {
public:
    Pattern(const Ball& ball, std::uint64_t bits) : ball_(&ball), bits_(bits) {}

    const Ball& ball() const { return *ball_; }
    std::uint64_t bits() const { return bits_; }
    bool black_cell(int cell_index) const {
        return (bits_ >> cell_index) & 1u;
    }
    bool black_at(int x, int y) const {
        const int i = ball_->cell_index(x, y);
        return i >= 0 && black_cell(i);
    }
    int black_count() const { return __builtin_popcountll(bits_); }
    std::vector<Offset> black_offsets() const;

private:
    const Ball* ball_;
    std::uint64_t bits_;
};

// A local property is an assertion about the pattern seen in a ball around a
// pixel, e.g. "two adjacent black pixels".  The predicate must be invariant
// under the implicit centering of the ball (it sees offsets, not absolute
// coordinates).
struct LocalProperty {
    std::string name;
    Ball ball;
    std::function<bool(const Pattern&)> predicate;
};

inline constexpr int kDefaultBlackCap = 6;

// Minimum number of black pixels over all patterns satisfying the property.
// Properties satisfied by the all-white pattern are rejected.
int black_index(const LocalProperty& prop, int b_cap = kDefaultBlackCap);

struct PropertyAnalysis {
    int black_index = 0;
    int meaningful_index = 0;
    // One entry per translation class of the minimal satisfying patterns.
    // canonical_sets holds the class keys (translated so the bounding-box
    // corner sits at the origin); representatives holds, aligned by index,
    // a member of the class that lies inside the ball, for exact-match
    // counting.  Both are sorted by (y, x).
    std::vector<std::vector<Offset>> canonical_sets;
    std::vector<std::vector<Offset>> representatives;
};

PropertyAnalysis analyze(const LocalProperty& prop,
                         int b_cap = kDefaultBlackCap);

// Number of translation classes among the satisfying patterns with exactly
// black_index black pixels.
int meaningful_index(const LocalProperty& prop, int b_cap = kDefaultBlackCap);

// Number of satisfying patterns over the full 2^|ball| enumeration.
long long definition_set_size(const LocalProperty& prop, int r_cap = 2);

// Limit probability 1 - exp(-e c^b) of observing the property somewhere in
// an n x n torus image with density c * n^(-2/b), as n grows.
double limit_probability(int black_index, int meaningful_index, double c);

// Pattern seen around (cx, cy); out-of-image cells read as white for plain
// boundaries and wrap for torus ones.
Pattern extract(const Ball& ball, const BinaryImage& image, int cx, int cy);

// Property catalog.
LocalProperty black_pixel(int radius = 1);
LocalProperty horizontal_pair(int radius = 1);
LocalProperty connected_pair(int radius = 1);
LocalProperty component_at_least(int k); // radius (k+1)/2

// Parses "black-pixel", "horizontal-pair", "connected-pair" or
// "component<K>" (e.g. component3).
LocalProperty property_by_name(const std::string& name);

} // namespace grainstat::patterns
