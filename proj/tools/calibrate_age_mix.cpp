// Bisects age_16_20_fraction until the baseline bed renege percentage hits a
// target. The bed queue's renege rate falls monotonically as the share of
// shorter-staying 16-20 year olds grows, so bisection on [lo, hi] converges.
//
//   calibrate-age-mix --target 25.3 --reps 400 --seed 777

#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "shelter/experiment.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Calibrate the bed-seeker age mix against a target bed renege percentage"};
    double target = 25.3;
    int reps = 400;
    std::uint64_t seed = 777;
    double lo = 0.5;
    double hi = 1.0;
    int iterations = 12;
    app.add_option("--target", target, "Target bed renege percentage");
    app.add_option("--reps", reps, "Replications per evaluation");
    app.add_option("--seed", seed, "Master seed (keep it distinct from the shipped default)");
    app.add_option("--lo", lo, "Lower bracket");
    app.add_option("--hi", hi, "Upper bracket");
    app.add_option("--iterations", iterations, "Bisection steps");
    CLI11_PARSE(app, argc, argv);

    shelter::ScenarioConfig config;
    config.replications = reps;
    config.master_seed = seed;
    std::cout << std::fixed << std::setprecision(6);
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        config.age_16_20_fraction = mid;
        const auto summary = shelter::run_scenario(config, 0);
        const double pct = summary.find("bed")->pct_reneged->mean;
        std::cout << "age_16_20_fraction=" << mid << "  bed renege %=" << pct << "\n";
        (pct > target ? lo : hi) = mid;
    }
    std::cout << "calibrated age_16_20_fraction ~ " << 0.5 * (lo + hi) << "\n";
    return 0;
}
