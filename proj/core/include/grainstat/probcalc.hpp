#pragma once

#include "grainstat/animals.hpp"

namespace grainstat::probcalc {

// Above this density the per-size appearance probabilities are no longer
// guaranteed to decrease (a_{k+1} p <= a_k can fail), so threshold scans
// refuse unless forced.
inline constexpr double kDefaultPMax = 0.2;

struct ThresholdQuery {
    int width = 0;
    int height = 0;
    double p = 0.0;   // density of the spurious pixels being removed
    double eps = 0.0; // acceptable probability that some noise grain survives
};

// Poisson-approximation probability that a width x height Bernoulli(p) image
// contains k connected black pixels somewhere: 1 - exp(-w*h * a_k * p^k).
double appearance_probability(int width, int height, int k, double p,
                              const animals::AnimalTable& table);

// Smallest k whose appearance probability is at most eps.  Components below
// this size can be removed while keeping the miss probability under eps.
int size_threshold(const ThresholdQuery& query,
                   const animals::AnimalTable& table, bool force = false);

// Closed-form estimate (log eps - log(w*h)) / (log a + log p) of the size
// threshold, using the table's assumed growth rate for a.
double approx_threshold(const ThresholdQuery& query,
                        const animals::AnimalTable& table);

// Whether a_k p^k decreases in k: a_{k+1} p <= a_k over the exact range and
// growth_assumed * p <= 1 for the extrapolated tail.
bool check_decreasing(double p, const animals::AnimalTable& table);

// Thresholds for the two passes of binary denoising.  In the noise model a
// 1-pixel flips to 0 with probability p and a 0-pixel flips to 1 with
// probability q, so spurious 0s appear at density p inside 1-regions and
// spurious 1s at density q inside 0-regions.
struct DenoisePlan {
    int s_zero = 0; // applied to 0-components, from the density-p query
    int s_one = 0;  // applied to 1-components, from the density-q query
    ThresholdQuery query_zero;
    ThresholdQuery query_one;
};

DenoisePlan make_denoise_plan(int width, int height, double p, double q,
                              double eps, const animals::AnimalTable& table,
                              bool force = false);

} // namespace grainstat::probcalc
