#include "grainstat/grayfilter.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <thread>

#include "grainstat/errors.hpp"
#include "grainstat/morpho.hpp"
#include "grainstat/probcalc.hpp"

namespace grainstat::grayfilter {
namespace {

void run_over_levels(int threads, const std::function<void(int)>& body) {
    if (threads <= 1) {
        for (int lambda = 1; lambda <= 255; ++lambda)
            body(lambda);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{1};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (int lambda = next.fetch_add(1); lambda <= 255;
                 lambda = next.fetch_add(1))
                body(lambda);
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace

LevelStack decompose(const GrayImage& image) {
    LevelStack stack;
    stack.width = image.width;
    stack.height = image.height;
    stack.slices.reserve(255);
    for (int lambda = 1; lambda <= 255; ++lambda) {
        BinaryImage slice(image.width, image.height);
        for (std::size_t i = 0; i < image.size(); ++i)
            slice.bits[i] = image.levels[i] >= lambda ? 1 : 0;
        stack.slices.push_back(std::move(slice));
    }
    return stack;
}

GrayImage reconstruct(const LevelStack& stack) {
    if (stack.slices.size() != 255)
        throw ParamError("level stack must hold 255 slices");
    GrayImage out(stack.width, stack.height);
    for (const BinaryImage& slice : stack.slices) {
        if (slice.width != stack.width || slice.height != stack.height)
            throw ParamError("level stack slices disagree on dimensions");
        for (std::size_t i = 0; i < out.size(); ++i)
            out.levels[i] = static_cast<std::uint8_t>(out.levels[i] +
                                                      slice.bits[i]);
    }
    return out;
}

std::pair<double, double> level_densities(double p, int lambda) {
    if (!(p >= 0.0) || p > 1.0)
        throw ParamError("p must be in [0, 1]");
    if (lambda < 1 || lambda > 255)
        throw ParamError("lambda must be in 1..255");
    return {p * lambda / 256.0, p * (256 - lambda) / 256.0};
}

LevelStack denoise_gray_stack(const GrayImage& image, double p, double eps,
                              const animals::AnimalTable& table,
                              int threads) {
    if (threads < 1)
        throw ParamError("thread count must be positive");

    // The 510 slice densities repeat across lambda only rarely, but the
    // threshold scan is cheap; memoizing by density still saves half the
    // scans because q_lambda mirrors p_(256-lambda).
    std::map<double, int> memo;
    auto threshold_for = [&](double density) {
        auto it = memo.find(density);
        if (it != memo.end())
            return it->second;
        const int s = probcalc::size_threshold(
            {image.width, image.height, density, eps}, table);
        memo.emplace(density, s);
        return s;
    };

    std::vector<probcalc::DenoisePlan> plans(256);
    for (int lambda = 1; lambda <= 255; ++lambda) {
        const auto [p_l, q_l] = level_densities(p, lambda);
        probcalc::DenoisePlan& plan = plans[lambda];
        plan.query_zero = {image.width, image.height, p_l, eps};
        plan.query_one = {image.width, image.height, q_l, eps};
        plan.s_zero = threshold_for(p_l);
        plan.s_one = threshold_for(q_l);
    }

    LevelStack stack = decompose(image);
    run_over_levels(threads, [&](int lambda) {
        BinaryImage& slice = stack.slices[lambda - 1];
        slice = morpho::denoise_binary(slice, plans[lambda]);
    });
    return stack;
}

GrayImage denoise_gray(const GrayImage& image, double p, double eps,
                       const animals::AnimalTable& table, int threads) {
    return reconstruct(denoise_gray_stack(image, p, eps, table, threads));
}

double nesting_fraction(const LevelStack& stack) {
    if (stack.slices.size() != 255)
        throw ParamError("level stack must hold 255 slices");
    int nested = 0;
    for (int lambda = 2; lambda <= 255; ++lambda) {
        const BinaryImage& upper = stack.slices[lambda - 1];
        const BinaryImage& lower = stack.slices[lambda - 2];
        bool ok = true;
        for (std::size_t i = 0; i < upper.size() && ok; ++i)
            ok = upper.bits[i] <= lower.bits[i];
        nested += ok ? 1 : 0;
    }
    return static_cast<double>(nested) / 254.0;
}

} // namespace grainstat::grayfilter
