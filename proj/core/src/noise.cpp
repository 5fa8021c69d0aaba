#include "grainstat/noise.hpp"

#include "grainstat/errors.hpp"
#include "grainstat/rng.hpp"

namespace grainstat::noise {
namespace {

void check_prob(double v, const char* what) {
    if (!(v >= 0.0) || v > 1.0)
        throw ParamError(std::string(what) + " must be in [0, 1]");
}

} // namespace

BinaryImage corrupt_binary(const BinaryImage& image, const NoiseSpec& spec) {
    check_prob(spec.p, "p");
    check_prob(spec.q, "q");
    BinaryImage out = image;
    rng::Xoshiro256ss gen(spec.seed);
    for (auto& pixel : out.bits) {
        const double u = gen.uniform();
        if (pixel == 1) {
            if (u < spec.p)
                pixel = 0;
        } else {
            if (u < spec.q)
                pixel = 1;
        }
    }
    return out;
}

GrayImage corrupt_gray(const GrayImage& image, double p, std::uint64_t seed) {
    check_prob(p, "p");
    GrayImage out = image;
    rng::Xoshiro256ss gen(seed);
    for (auto& pixel : out.levels) {
        if (gen.uniform() < p)
            pixel = static_cast<std::uint8_t>(gen.below(256));
    }
    return out;
}

} // namespace grainstat::noise
