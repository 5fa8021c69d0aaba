#pragma once

#include "grainstat/image.hpp"
#include "grainstat/probcalc.hpp"

namespace grainstat::morpho {

// Flips every 4-connected component of `color` with fewer than `threshold`
// pixels to the opposite color.  threshold = 1 is the identity.
BinaryImage remove_small_components(const BinaryImage& image,
                                    std::uint8_t color, int threshold);

// Two-pass grain filter.  Spurious 0s appear inside 1-regions at density p
// and spurious 1s inside 0-regions at density q, so the first pass removes
// small 0-components at the density-p threshold and the second pass removes
// small 1-components at the density-q threshold.  The passes do not commute.
BinaryImage denoise_binary(const BinaryImage& image,
                           const probcalc::DenoisePlan& plan);

// Same thresholds, passes exchanged (for order-sensitivity studies).
BinaryImage denoise_binary_swapped(const BinaryImage& image,
                                   const probcalc::DenoisePlan& plan);

} // namespace grainstat::morpho
