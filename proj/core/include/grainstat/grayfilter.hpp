#pragma once

#include <utility>
#include <vector>

#include "grainstat/animals.hpp"
#include "grainstat/image.hpp"

namespace grainstat::grayfilter {

// Threshold decomposition of an 8-bit image: slice lambda (1..255) is 1
// where the level is >= lambda.  Level 0 carries no slice; the stack of a
// clean image is nested (slice 255 <= ... <= slice 1) and summing the
// slices recovers the image exactly.
struct LevelStack {
    int width = 0;
    int height = 0;
    std::vector<BinaryImage> slices; // slices[i] is the lambda = i+1 slice

    const BinaryImage& slice(int lambda) const { return slices[lambda - 1]; }
};

LevelStack decompose(const GrayImage& image);

// Pixel-wise sum of the slices.  Exact inverse of decompose; defined for
// arbitrary (non-nested) stacks as well.
GrayImage reconstruct(const LevelStack& stack);

// Per-slice impulse densities when the gray image was corrupted with
// parameter p: a slice-1 pixel turns 0 with probability p*lambda/256 and a
// slice-0 pixel turns 1 with probability p*(1 - lambda/256).
std::pair<double, double> level_densities(double p, int lambda);

// Applies the two-pass grain filter to every slice with thresholds matched
// to that slice's densities, then reassembles by summation.  Filtered slices
// need not be nested; nesting_fraction measures how close they come.
LevelStack denoise_gray_stack(const GrayImage& image, double p, double eps,
                              const animals::AnimalTable& table,
                              int threads = 1);

GrayImage denoise_gray(const GrayImage& image, double p, double eps,
                       const animals::AnimalTable& table, int threads = 1);

// Fraction of lambda in 2..255 whose slice is pixel-wise below the
// lambda - 1 slice.  1.0 for any decomposed (unfiltered) stack.
double nesting_fraction(const LevelStack& stack);

} // namespace grainstat::grayfilter
