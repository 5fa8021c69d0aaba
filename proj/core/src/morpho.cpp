#include "grainstat/morpho.hpp"

#include "grainstat/ccl.hpp"
#include "grainstat/errors.hpp"

namespace grainstat::morpho {
namespace {

void check_plan(const BinaryImage& image, const probcalc::DenoisePlan& plan) {
    if (plan.query_zero.width != image.width ||
        plan.query_zero.height != image.height ||
        plan.query_one.width != image.width ||
        plan.query_one.height != image.height)
        throw ParamError("denoise plan was computed for different image "
                         "dimensions");
}

} // namespace

BinaryImage remove_small_components(const BinaryImage& image,
                                    std::uint8_t color, int threshold) {
    if (threshold < 1)
        throw ParamError("area threshold must be at least 1");
    if (threshold == 1)
        return image;
    const ccl::ComponentSet comps = ccl::label_components(image, color);
    BinaryImage out = image;
    const std::uint8_t flipped = static_cast<std::uint8_t>(1 - color);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::int32_t label = comps.labels[i];
        if (label != 0 && comps.sizes[label] < threshold)
            out.bits[i] = flipped;
    }
    return out;
}

BinaryImage denoise_binary(const BinaryImage& image,
                           const probcalc::DenoisePlan& plan) {
    check_plan(image, plan);
    BinaryImage pass1 = remove_small_components(image, 0, plan.s_zero);
    return remove_small_components(pass1, 1, plan.s_one);
}

BinaryImage denoise_binary_swapped(const BinaryImage& image,
                                   const probcalc::DenoisePlan& plan) {
    check_plan(image, plan);
    BinaryImage pass1 = remove_small_components(image, 1, plan.s_one);
    return remove_small_components(pass1, 0, plan.s_zero);
}

} // namespace grainstat::morpho
