#include <cmath>

#include "doctest.h"
#include "grainstat/animals.hpp"
#include "grainstat/errors.hpp"
#include "grainstat/probcalc.hpp"

using namespace grainstat;

namespace {

const animals::AnimalTable& table12() {
    static const auto table = animals::build_table(12);
    return table;
}

const animals::AnimalTable& table14() {
    static const auto table = animals::build_table(14);
    return table;
}

const animals::AnimalTable& table4() {
    static const auto table = animals::build_table(4);
    return table;
}

} // namespace

TEST_CASE("appearance probability matches the Poisson form for single pixels") {
    // Mean count is 10 * 10 * 1 * 0.01 = 1, so the probability is 1 - exp(-1).
    const double pa = probcalc::appearance_probability(10, 10, 1, 0.01, table12());
    CHECK(pa == doctest::Approx(0.6321205588).epsilon(1e-9));

    // The exact complement 1 - (1 - p)^(wh) differs only in the third decimal.
    const double exact = 1.0 - std::pow(0.99, 100.0);
    CHECK(std::abs(pa - exact) < 0.002);
}

TEST_CASE("appearance probability edge cases") {
    CHECK(probcalc::appearance_probability(256, 256, 3, 0.0, table12()) == 0.0);
    // Mean count far above one saturates at certainty.
    CHECK(probcalc::appearance_probability(256, 256, 1, 0.5, table12())
          == doctest::Approx(1.0));
    // Symmetric in the two image dimensions.
    CHECK(probcalc::appearance_probability(128, 64, 4, 0.05, table12())
          == probcalc::appearance_probability(64, 128, 4, 0.05, table12()));
    CHECK_THROWS_AS(probcalc::appearance_probability(0, 10, 1, 0.1, table12()),
                    ParamError);
    CHECK_THROWS_AS(probcalc::appearance_probability(10, 10, 0, 0.1, table12()),
                    ParamError);
}

TEST_CASE("size threshold for the reference 256x256 low-noise setting") {
    const probcalc::ThresholdQuery query{256, 256, 0.01, 0.01};
    const int s = probcalc::size_threshold(query, table12());
    CHECK(s == 5);

    // The threshold is the first size whose appearance probability drops
    // under epsilon, so the bracketing values must straddle it.
    const double above = probcalc::appearance_probability(256, 256, 4, 0.01, table12());
    const double below = probcalc::appearance_probability(256, 256, 5, 0.01, table12());
    CHECK(above > 0.01);
    CHECK(below <= 0.01);
    CHECK(above == doctest::Approx(0.012373).epsilon(1e-3));
    CHECK(below == doctest::Approx(4.128e-4).epsilon(1e-3));
}

TEST_CASE("size thresholds for the medium-noise settings") {
    CHECK(probcalc::size_threshold({256, 256, 0.1, 0.01}, table12()) == 14);
    CHECK(probcalc::size_threshold({128, 128, 0.1, 0.01}, table12()) == 12);
    CHECK(probcalc::size_threshold({256, 256, 0.1, 0.5}, table12()) == 9);
    // At this density most of the scan runs on the extrapolated tail, so the
    // answer depends on how deep the exact table goes.
    CHECK(probcalc::size_threshold({256, 256, 0.2, 0.01}, table14()) == 57);
    CHECK(probcalc::size_threshold({128, 128, 0.2, 0.01}, table14()) == 51);
}

TEST_CASE("a zero density never produces spurious components") {
    CHECK(probcalc::size_threshold({256, 256, 0.0, 0.01}, table12()) == 1);
}

TEST_CASE("the threshold is monotone in density, tolerance, and image area") {
    int previous = 0;
    for (double p : {0.01, 0.05, 0.1, 0.15, 0.2}) {
        const int s = probcalc::size_threshold({256, 256, p, 0.01}, table12());
        CHECK(s >= previous);
        previous = s;
    }

    const int strict = probcalc::size_threshold({256, 256, 0.1, 0.001}, table12());
    const int loose = probcalc::size_threshold({256, 256, 0.1, 0.1}, table12());
    CHECK(strict >= loose);

    const int small = probcalc::size_threshold({64, 64, 0.1, 0.01}, table12());
    const int large = probcalc::size_threshold({512, 512, 0.1, 0.01}, table12());
    CHECK(small <= large);
}

TEST_CASE("closed-form approximation tracks the scanned threshold") {
    const double mid = probcalc::approx_threshold({256, 256, 0.1, 0.01}, table12());
    CHECK(mid == doctest::Approx(17.41).epsilon(0.005));

    const double low = probcalc::approx_threshold({256, 256, 0.01, 0.01}, table12());
    CHECK(low == doctest::Approx(4.9).epsilon(0.01));
    CHECK(std::abs(low - 5.0) <= 2.0);

    CHECK_THROWS_AS(probcalc::approx_threshold({256, 256, 0.0, 0.01}, table12()),
                    ParamError);
    // log(a * p) must be negative for the formula to make sense.
    CHECK_THROWS_AS(probcalc::approx_threshold({256, 256, 0.3, 0.01}, table12()),
                    ParamError);
}

TEST_CASE("densities beyond the documented range need an explicit override") {
    const probcalc::ThresholdQuery query{256, 256, 0.24, 0.01};
    CHECK_THROWS_AS(probcalc::size_threshold(query, table12()), ParamError);
    CHECK_NOTHROW(probcalc::size_threshold(query, table12(), true));
    // Even with the override, densities that break the decreasing-mean
    // requirement are rejected rather than extrapolated.
    CHECK_THROWS_AS(probcalc::size_threshold({256, 256, 0.9, 0.01}, table12(), true),
                    ParamError);
}

TEST_CASE("the decreasing-mean check matches the table contents") {
    CHECK(probcalc::check_decreasing(0.0, table12()));
    CHECK(probcalc::check_decreasing(0.2, table12()));
    CHECK_FALSE(probcalc::check_decreasing(0.9, table4()));
    // 4.06 * 0.25 > 1, so the extrapolated tail would stop shrinking.
    CHECK_FALSE(probcalc::check_decreasing(0.26, table12()));
}

TEST_CASE("invalid queries are rejected") {
    CHECK_THROWS_AS(probcalc::size_threshold({0, 256, 0.1, 0.01}, table12()),
                    ParamError);
    CHECK_THROWS_AS(probcalc::size_threshold({256, 256, -0.1, 0.01}, table12()),
                    ParamError);
    CHECK_THROWS_AS(probcalc::size_threshold({256, 256, 0.1, 0.0}, table12()),
                    ParamError);
    CHECK_THROWS_AS(probcalc::size_threshold({256, 256, 0.1, 1.0}, table12()),
                    ParamError);
}

TEST_CASE("a denoising plan derives each pass from the matching flip density") {
    const auto plan = probcalc::make_denoise_plan(256, 256, 0.1, 0.01, 0.01, table12());
    // Flips of ones at rate p leave spurious zeros, handled by the first pass.
    CHECK(plan.s_zero == 14);
    CHECK(plan.s_one == 5);
    CHECK(plan.query_zero.p == doctest::Approx(0.1));
    CHECK(plan.query_one.p == doctest::Approx(0.01));

    const auto symmetric = probcalc::make_denoise_plan(256, 256, 0.05, 0.05, 0.01, table12());
    CHECK(symmetric.s_zero == symmetric.s_one);
}
