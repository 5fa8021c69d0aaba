#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "grainstat/image.hpp"

namespace grainstat::ccl {

// Labeling of one color's 4-connected components.  Pixels of the other
// color carry label 0; component labels are dense in 1..count and sizes
// is indexed by label (sizes[0] unused).
struct ComponentSet {
    std::vector<std::int32_t> labels;
    std::vector<std::int64_t> sizes;
    int count = 0;
};

ComponentSet label_components(const BinaryImage& image, std::uint8_t color);

// size -> number of components of that size
std::map<std::int64_t, std::int64_t> component_size_histogram(
    const ComponentSet& components);

} // namespace grainstat::ccl
