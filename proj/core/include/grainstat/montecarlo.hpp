#pragma once

#include <cstdint>
#include <vector>

#include "grainstat/animals.hpp"
#include "grainstat/image.hpp"
#include "grainstat/patterns.hpp"

namespace grainstat::montecarlo {

struct ExperimentSpec {
    int n = 256;          // square torus side
    double c = 1.0;       // density scale: p(n) = c * n^(-2/b)
    long trials = 10000;
    std::uint64_t seed = 0;
    Boundary boundary = Boundary::torus;
    int threads = 1;
};

// Result of one estimated probability (or rejection fraction) against its
// theoretical target.  Symmetric experiments pass when
// |estimate - target| <= tolerance; lower-bound experiments (noise
// rejection) pass when estimate >= target - tolerance.
struct EstimateReport {
    double estimate = 0.0;
    long trials = 0;
    double wilson_halfwidth = 0.0; // 95% confidence
    double target = 0.0;
    double tolerance = 0.0;
    bool lower_bound_only = false;
    bool pass = false;
};

double wilson_halfwidth(double estimate, long trials);

// Density c * n^(-2/b); errors out when it leaves [0, 1].
double scaled_density(int n, double c, int black_index);

// Fraction of random images (density c * n^(-2/b)) in which the property
// holds at some pixel, against the limit target 1 - exp(-e c^b).  Images
// are sampled sparsely (geometric gaps); evaluation visits only balls that
// contain a black pixel.
EstimateReport estimate_property_probability(
    const patterns::LocalProperty& prop, const ExperimentSpec& spec);

// Same estimate with dense per-pixel sampling and a full scan over all
// centers.  Slow; kept as an independent cross-check of the sparse path.
EstimateReport estimate_property_probability_dense(
    const patterns::LocalProperty& prop, const ExperimentSpec& spec);

struct SweepPoint {
    int n = 0;
    double density = 0.0;
    double estimate = 0.0;
    double wilson_halfwidth = 0.0;
};

// Estimates the property probability at p(n) = n^(-2/b + delta) for each n.
// Negative delta drives the probability to 0, positive delta to 1.
std::vector<SweepPoint> scaling_sweep(const patterns::LocalProperty& prop,
                                      const std::vector<int>& sizes,
                                      double delta, long trials,
                                      std::uint64_t seed, int threads = 1);

// Factorial moments E[X(X-1)...(X-l+1)] of the count X of exact occurrences
// of the property's minimal patterns, against the limit (e c^b)^l.  For
// l = 1 the exact finite-n expectation n^2 e p^b (1-p)^(|ball|-b) is also
// checked (within 3 standard errors).
struct MomentReport {
    int order = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double target = 0.0;     // limit value (e c^b)^l
    double exact = 0.0;      // finite-n expectation; order 1 only
    bool has_exact = false;
    double tolerance = 0.0;
    bool pass = false;
};

std::vector<MomentReport> estimate_factorial_moments(
    const patterns::LocalProperty& prop, const ExperimentSpec& spec,
    int l_max);

// Fraction of density-p images on an empty plain-boundary background that
// the size-threshold removal maps back to the empty image.  The guarantee
// is a lower bound of 1 - eps.
EstimateReport pure_noise_rejection(int n, double p, double eps, long trials,
                                    std::uint64_t seed,
                                    const animals::AnimalTable& table,
                                    int threads = 1);

} // namespace grainstat::montecarlo
