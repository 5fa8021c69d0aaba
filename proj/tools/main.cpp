#include <cstdio>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "grainstat/animals.hpp"
#include "grainstat/errors.hpp"
#include "grainstat/grayfilter.hpp"
#include "grainstat/image.hpp"
#include "grainstat/montecarlo.hpp"
#include "grainstat/morpho.hpp"
#include "grainstat/noise.hpp"
#include "grainstat/patterns.hpp"
#include "grainstat/pnm.hpp"
#include "grainstat/probcalc.hpp"

using namespace grainstat;

namespace {

// Exit codes: 0 success, 2 bad parameters or usage, 3 unreadable input,
// 4 a verification experiment failed its guarantee.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitVerifyFailed = 4;

struct AnimalsOptions {
    int kmax = animals::kDefaultKCap;
    double growth = animals::kDefaultGrowth;
    std::string cache;
};

int run_animals(const AnimalsOptions& opt) {
    const auto table = opt.cache.empty()
                           ? animals::build_table(opt.kmax, opt.growth)
                           : animals::build_table_cached(opt.kmax, opt.cache,
                                                         opt.growth);
    std::ostringstream out;
    animals::save_table(table, out);
    std::fputs(out.str().c_str(), stdout);
    return kExitOk;
}

struct ThresholdOptions {
    int width = 0;
    int height = 0;
    double p = 0.0;
    double eps = 0.0;
    int kmax = 12;
    bool force = false;
};

int run_threshold(const ThresholdOptions& opt) {
    const auto table = animals::build_table(opt.kmax);
    const probcalc::ThresholdQuery query{opt.width, opt.height, opt.p, opt.eps};
    const int s = probcalc::size_threshold(query, table, opt.force);
    const double at_s =
        probcalc::appearance_probability(opt.width, opt.height, s, opt.p, table);

    std::printf("s\tpa_at_s\tpa_before\tapprox\n");
    std::printf("%d\t%.6g\t", s, at_s);
    if (s > 1)
        std::printf("%.6g\t", probcalc::appearance_probability(
                                  opt.width, opt.height, s - 1, opt.p, table));
    else
        std::printf("-\t");
    std::printf("%.6g\n", probcalc::approx_threshold(query, table));
    return kExitOk;
}

struct NoiseOptions {
    std::string in;
    std::string out;
    double p = 0.0;
    double q = -1.0; // negative: not given
    std::uint64_t seed = 0;
};

int run_add_noise(const NoiseOptions& opt) {
    const auto any = pnm::read_image(opt.in);
    if (std::holds_alternative<BinaryImage>(any)) {
        const auto& image = std::get<BinaryImage>(any);
        const double q = opt.q < 0 ? opt.p : opt.q;
        pnm::write_image(noise::corrupt_binary(image, {opt.p, q, opt.seed}),
                         opt.out);
    } else {
        if (opt.q >= 0)
            throw ParamError("--q applies to binary images only; gray impulse "
                             "noise has the single rate --p");
        pnm::write_image(noise::corrupt_gray(std::get<GrayImage>(any), opt.p,
                                             opt.seed),
                         opt.out);
    }
    return kExitOk;
}

struct DenoiseBinaryOptions {
    std::string in;
    std::string out;
    double p = 0.0;
    double q = 0.0;
    double eps = 0.01;
    int kmax = 12;
    bool force = false;
    bool swapped = false;
};

int run_denoise_binary(const DenoiseBinaryOptions& opt) {
    const auto any = pnm::read_image(opt.in);
    if (!std::holds_alternative<BinaryImage>(any))
        throw ParamError("denoise-binary expects a PBM image; got a graymap "
                         "(use denoise-gray)");
    const auto& image = std::get<BinaryImage>(any);

    const auto table = animals::build_table(opt.kmax);
    const auto plan = probcalc::make_denoise_plan(
        image.width, image.height, opt.p, opt.q, opt.eps, table, opt.force);
    pnm::write_image(opt.swapped ? morpho::denoise_binary_swapped(image, plan)
                                 : morpho::denoise_binary(image, plan),
                     opt.out);
    std::printf("s_zero\ts_one\n%d\t%d\n", plan.s_zero, plan.s_one);
    return kExitOk;
}

struct DenoiseGrayOptions {
    std::string in;
    std::string out;
    double p = 0.0;
    double eps = 0.01;
    int kmax = 12;
    int threads = 1;
    bool report_nesting = false;
};

int run_denoise_gray(const DenoiseGrayOptions& opt) {
    const auto any = pnm::read_image(opt.in);
    if (!std::holds_alternative<GrayImage>(any))
        throw ParamError("denoise-gray expects a PGM image; got a bitmap "
                         "(use denoise-binary)");
    const auto& image = std::get<GrayImage>(any);

    const auto table = animals::build_table(opt.kmax);
    const auto stack =
        grayfilter::denoise_gray_stack(image, opt.p, opt.eps, table, opt.threads);
    pnm::write_image(grayfilter::reconstruct(stack), opt.out);
    if (opt.report_nesting)
        std::printf("nesting_fraction\t%.6f\n",
                    grayfilter::nesting_fraction(stack));
    return kExitOk;
}

struct VerifyOptions {
    std::string experiment;
    std::string property;
    int n = 256;
    double c = 1.0;
    long trials = 10000;
    std::uint64_t seed = 0;
    int threads = 1;
    int lmax = 2;
    double delta = -0.25;
    std::string sizes;
    double p = 0.1;
    double eps = 0.01;
    int kmax = 12;
    std::string boundary = "torus";
};

void print_estimate(const montecarlo::EstimateReport& report) {
    std::printf("estimate\ttrials\twilson\ttarget\ttolerance\tpass\n");
    std::printf("%.6f\t%ld\t%.6f\t%.6f\t%.6f\t%d\n", report.estimate,
                report.trials, report.wilson_halfwidth, report.target,
                report.tolerance, report.pass ? 1 : 0);
}

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> sizes;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            sizes.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ParamError("--sizes must be a comma-separated list of side "
                             "lengths, e.g. 32,64,128");
        }
    }
    return sizes;
}

int run_verify(const VerifyOptions& opt) {
    montecarlo::ExperimentSpec spec;
    spec.n = opt.n;
    spec.c = opt.c;
    spec.trials = opt.trials;
    spec.seed = opt.seed;
    spec.threads = opt.threads;
    if (opt.boundary == "plain")
        spec.boundary = Boundary::plain;
    else if (opt.boundary != "torus")
        throw ParamError("--boundary must be plain or torus");

    if (opt.experiment == "theorem1") {
        const auto prop = patterns::property_by_name(opt.property);
        const auto report = montecarlo::estimate_property_probability(prop, spec);
        print_estimate(report);
        return report.pass ? kExitOk : kExitVerifyFailed;
    }

    if (opt.experiment == "moments") {
        const auto prop = patterns::property_by_name(opt.property);
        const auto reports =
            montecarlo::estimate_factorial_moments(prop, spec, opt.lmax);
        std::printf("order\tmean\tstd_error\ttarget\texact\ttolerance\tpass\n");
        bool all_pass = true;
        for (const auto& r : reports) {
            std::printf("%d\t%.6f\t%.6f\t%.6f\t", r.order, r.mean, r.std_error,
                        r.target);
            if (r.has_exact)
                std::printf("%.6f\t", r.exact);
            else
                std::printf("-\t");
            std::printf("%.6f\t%d\n", r.tolerance, r.pass ? 1 : 0);
            all_pass = all_pass && r.pass;
        }
        return all_pass ? kExitOk : kExitVerifyFailed;
    }

    if (opt.experiment == "scaling") {
        const auto prop = patterns::property_by_name(opt.property);
        const auto points = montecarlo::scaling_sweep(
            prop, parse_sizes(opt.sizes), opt.delta, opt.trials, opt.seed,
            opt.threads);
        std::printf("n\tdensity\testimate\twilson\n");
        for (const auto& pt : points)
            std::printf("%d\t%.6g\t%.6f\t%.6f\n", pt.n, pt.density, pt.estimate,
                        pt.wilson_halfwidth);
        return kExitOk;
    }

    if (opt.experiment == "rejection") {
        const auto table = animals::build_table(opt.kmax);
        const auto report = montecarlo::pure_noise_rejection(
            opt.n, opt.p, opt.eps, opt.trials, opt.seed, table, opt.threads);
        print_estimate(report);
        return report.pass ? kExitOk : kExitVerifyFailed;
    }

    throw ParamError("unknown experiment \"" + opt.experiment +
                     "\" (expected theorem1, moments, scaling or rejection)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statistical grain filters for impulse noise on binary and "
                 "gray images"};
    app.require_subcommand(1);

    AnimalsOptions animals_opt;
    auto* animals_cmd =
        app.add_subcommand("animals", "Count fixed lattice animals per size");
    animals_cmd->add_option("--kmax", animals_opt.kmax,
                            "Largest size to enumerate exactly")
        ->required();
    animals_cmd->add_option("--growth", animals_opt.growth,
                            "Assumed growth rate beyond kmax");
    animals_cmd->add_option("--cache", animals_opt.cache,
                            "Table file to reuse or create");

    ThresholdOptions threshold_opt;
    auto* threshold_cmd = app.add_subcommand(
        "threshold", "Component size below which noise is removed");
    threshold_cmd->add_option("--width", threshold_opt.width)->required();
    threshold_cmd->add_option("--height", threshold_opt.height)->required();
    threshold_cmd->add_option("--p", threshold_opt.p, "Impulse density")
        ->required();
    threshold_cmd->add_option("--eps", threshold_opt.eps,
                              "Acceptable probability of surviving noise")
        ->required();
    threshold_cmd->add_option("--kmax", threshold_opt.kmax,
                              "Exact animal-table depth");
    threshold_cmd->add_flag("--force", threshold_opt.force,
                            "Accept densities beyond the validated range");

    NoiseOptions noise_opt;
    auto* noise_cmd =
        app.add_subcommand("add-noise", "Corrupt an image with impulse noise");
    noise_cmd->add_option("--in", noise_opt.in, "Input PBM/PGM")->required();
    noise_cmd->add_option("--out", noise_opt.out, "Output image")->required();
    noise_cmd->add_option("--p", noise_opt.p, "1-to-0 rate (or gray hit rate)")
        ->required();
    noise_cmd->add_option("--q", noise_opt.q,
                          "0-to-1 rate (binary only; defaults to --p)");
    noise_cmd->add_option("--seed", noise_opt.seed);

    DenoiseBinaryOptions db_opt;
    auto* db_cmd = app.add_subcommand(
        "denoise-binary", "Two-pass grain filter for a corrupted bitmap");
    db_cmd->add_option("--in", db_opt.in, "Corrupted PBM")->required();
    db_cmd->add_option("--out", db_opt.out, "Filtered PBM")->required();
    db_cmd->add_option("--p", db_opt.p, "1-to-0 rate of the noise")->required();
    db_cmd->add_option("--q", db_opt.q, "0-to-1 rate of the noise")->required();
    db_cmd->add_option("--eps", db_opt.eps,
                       "Acceptable probability of surviving noise");
    db_cmd->add_option("--kmax", db_opt.kmax, "Exact animal-table depth");
    db_cmd->add_flag("--force", db_opt.force,
                     "Accept densities beyond the validated range");
    db_cmd->add_flag("--swapped", db_opt.swapped,
                     "Remove small 1-components before 0-components");

    DenoiseGrayOptions dg_opt;
    auto* dg_cmd = app.add_subcommand(
        "denoise-gray", "Level-by-level grain filter for a corrupted graymap");
    dg_cmd->add_option("--in", dg_opt.in, "Corrupted PGM")->required();
    dg_cmd->add_option("--out", dg_opt.out, "Filtered PGM")->required();
    dg_cmd->add_option("--p", dg_opt.p, "Impulse hit rate")->required();
    dg_cmd->add_option("--eps", dg_opt.eps,
                       "Acceptable probability of surviving noise per level");
    dg_cmd->add_option("--kmax", dg_opt.kmax, "Exact animal-table depth");
    dg_cmd->add_option("--threads", dg_opt.threads, "Worker threads");
    dg_cmd->add_flag("--report-nesting", dg_opt.report_nesting,
                     "Print how nested the filtered level stack is");

    VerifyOptions verify_opt;
    auto* verify_cmd = app.add_subcommand(
        "verify", "Monte Carlo checks of the statistical guarantees");
    verify_cmd
        ->add_option("--experiment", verify_opt.experiment,
                     "theorem1, moments, scaling or rejection")
        ->required();
    verify_cmd->add_option("--property", verify_opt.property,
                           "black-pixel, horizontal-pair, connected-pair or "
                           "component<K>");
    verify_cmd->add_option("--n", verify_opt.n, "Square image side");
    verify_cmd->add_option("--c", verify_opt.c, "Density scale factor");
    verify_cmd->add_option("--trials", verify_opt.trials);
    verify_cmd->add_option("--seed", verify_opt.seed);
    verify_cmd->add_option("--threads", verify_opt.threads);
    verify_cmd->add_option("--lmax", verify_opt.lmax,
                           "Highest factorial moment (moments)");
    verify_cmd->add_option("--delta", verify_opt.delta,
                           "Exponent offset from critical (scaling)");
    verify_cmd->add_option("--sizes", verify_opt.sizes,
                           "Comma-separated sides (scaling)");
    verify_cmd->add_option("--p", verify_opt.p, "Noise density (rejection)");
    verify_cmd->add_option("--eps", verify_opt.eps,
                           "Survival probability bound (rejection)");
    verify_cmd->add_option("--kmax", verify_opt.kmax,
                           "Exact animal-table depth (rejection)");
    verify_cmd->add_option("--boundary", verify_opt.boundary,
                           "torus (default) or plain");

    int exit_code = kExitOk;
    animals_cmd->callback([&] { exit_code = run_animals(animals_opt); });
    threshold_cmd->callback([&] { exit_code = run_threshold(threshold_opt); });
    noise_cmd->callback([&] { exit_code = run_add_noise(noise_opt); });
    db_cmd->callback([&] { exit_code = run_denoise_binary(db_opt); });
    dg_cmd->callback([&] { exit_code = run_denoise_gray(dg_opt); });
    verify_cmd->callback([&] { exit_code = run_verify(verify_opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const ParamError& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitUsage;
    } catch (const ParseError& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitParse;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return exit_code;
}
