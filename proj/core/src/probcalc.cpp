#include "grainstat/probcalc.hpp"

#include <cmath>
#include <string>

#include "grainstat/errors.hpp"

namespace grainstat::probcalc {
namespace {

void validate_query(const ThresholdQuery& q, double p_max) {
    if (q.width < 1 || q.height < 1)
        throw ParamError("image dimensions must be at least 1x1");
    if (!(q.p >= 0.0) || q.p > 1.0)
        throw ParamError("density must be in [0, 1]");
    if (q.p > p_max)
        throw ParamError("density " + std::to_string(q.p) +
                         " exceeds the validity bound p_max=" +
                         std::to_string(p_max) +
                         "; appearance probabilities may not decrease with "
                         "size (pass force to override)");
    if (!(q.eps > 0.0) || !(q.eps < 1.0))
        throw ParamError("eps must be in (0, 1)");
}

} // namespace

double appearance_probability(int width, int height, int k, double p,
                              const animals::AnimalTable& table) {
    if (width < 1 || height < 1)
        throw ParamError("image dimensions must be at least 1x1");
    if (!(p >= 0.0) || p > 1.0)
        throw ParamError("density must be in [0, 1]");
    if (p == 0.0)
        return 0.0;
    const double count = animals::count_at(table, k).count;
    // exp(log .) keeps the mean finite when p^k alone would underflow
    const double log_mean = std::log(static_cast<double>(width)) +
                            std::log(static_cast<double>(height)) +
                            std::log(count) + k * std::log(p);
    if (log_mean > 700.0)
        return 1.0;
    return -std::expm1(-std::exp(log_mean));
}

int size_threshold(const ThresholdQuery& query,
                   const animals::AnimalTable& table, bool force) {
    validate_query(query, force ? 1.0 : kDefaultPMax);
    if (query.p == 0.0)
        return 1;
    if (table.growth_assumed * query.p >= 1.0)
        throw ParamError("growth * p >= 1: threshold undefined under "
                         "extrapolation");
    if (!check_decreasing(query.p, table))
        throw ParamError("appearance probability is not decreasing in size "
                         "at density " + std::to_string(query.p));

    const double approx = approx_threshold(query, table);
    const int scan_cap = static_cast<int>(
        std::min(1e4, std::ceil(10.0 * approx) + 1.0));
    for (int k = 1; k <= scan_cap; ++k) {
        if (appearance_probability(query.width, query.height, k, query.p,
                                   table) <= query.eps)
            return k;
    }
    throw ParamError("no size threshold found below scan cap " +
                     std::to_string(scan_cap));
}

double approx_threshold(const ThresholdQuery& query,
                        const animals::AnimalTable& table) {
    if (query.width < 1 || query.height < 1)
        throw ParamError("image dimensions must be at least 1x1");
    if (!(query.p > 0.0) || query.p > 1.0)
        throw ParamError("density must be in (0, 1] for the log form");
    if (!(query.eps > 0.0) || !(query.eps < 1.0))
        throw ParamError("eps must be in (0, 1)");
    const double denom = std::log(table.growth_assumed) + std::log(query.p);
    if (denom >= 0.0)
        throw ParamError("growth * p >= 1: log form undefined");
    const double numer = std::log(query.eps) -
                         std::log(static_cast<double>(query.width)) -
                         std::log(static_cast<double>(query.height));
    return numer / denom;
}

bool check_decreasing(double p, const animals::AnimalTable& table) {
    if (!(p >= 0.0) || p > 1.0)
        throw ParamError("density must be in [0, 1]");
    for (int k = 1; k < table.k_max_exact; ++k) {
        if (static_cast<double>(table.exact_count(k + 1)) * p >
            static_cast<double>(table.exact_count(k)))
            return false;
    }
    return table.growth_assumed * p <= 1.0;
}

DenoisePlan make_denoise_plan(int width, int height, double p, double q,
                              double eps, const animals::AnimalTable& table,
                              bool force) {
    DenoisePlan plan;
    plan.query_zero = {width, height, p, eps};
    plan.query_one = {width, height, q, eps};
    plan.s_zero = size_threshold(plan.query_zero, table, force);
    plan.s_one = size_threshold(plan.query_one, table, force);
    return plan;
}

} // namespace grainstat::probcalc
