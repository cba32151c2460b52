#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "benchsim/config.hpp"

namespace benchsim {

struct RegressionResult {
    double slope = 0.0;      // N/m when fitting force vs displacement
    double intercept = 0.0;
    double correlation_r = 0.0;  // signed Pearson coefficient

    bool operator==(const RegressionResult&) const = default;
};

// Ordinary least squares y = slope*x + intercept. Needs >= 3 points of equal count
// and nonzero variance in x; degenerate input throws SimError.
RegressionResult linear_regression(std::span<const double> xs, std::span<const double> ys);

struct SineFit {
    double amplitude = 0.0;
    double phase_rad = 0.0;
    double offset = 0.0;
};

// Least-squares fit of a*sin + b*cos + c at a known frequency.
SineFit fit_sine(std::span<const double> time_s, std::span<const double> values,
                 double frequency_hz);

// Pointwise mean and sample standard deviation across aligned runs.
struct ChannelStats {
    std::vector<double> mean;
    std::vector<double> stddev;
};
ChannelStats pointwise_stats(const std::vector<const std::vector<double>*>& runs);

// Everything a protocol produces: the raw runs plus the derived statistics.
struct ExperimentResult {
    Protocol protocol = Protocol::generic;
    std::vector<TimeSeries> runs;
    std::vector<std::uint64_t> run_seeds;

    ChannelStats force_stats;     // across runs, full length
    ChannelStats position_stats;

    // Repeatability: per-run steady-state amplitude (sine fit over the final 80%)
    // and the worst pointwise force std over the same window.
    std::vector<double> amplitude_est_n;
    double max_force_std_n = 0.0;
    double fit_window_start_s = 0.0;

    // Blocked protocol: per-run peak of the encoder-measured displacement.
    std::vector<double> peak_displacement_m;

    // Stiffness identification: mean cycle and the fit over it.
    std::vector<double> mean_position_m;
    std::vector<double> mean_force_n;
    std::optional<RegressionResult> stiffness;
};

// Seed for run i under the experiment's seed policy.
std::uint64_t run_seed(const BenchConfig& c, int run_index);

// Builds the plant/controller/sensors for one run of this config.
struct RunSetup {
    std::unique_ptr<Plant> plant;
    std::unique_ptr<Controller> controller;
    SensorSuite sensors;
    ReferenceFn reference;
};
RunSetup make_run_setup(const BenchConfig& c);

// Executes config.experiment.runs seeded runs and derives the protocol statistics.
ExperimentResult run_experiment(const BenchConfig& c);

// Statistics alone, from already-recorded runs (used by run_experiment and by the
// CLI summarize path so both produce identical numbers from identical series).
ExperimentResult compute_statistics(const BenchConfig& c, std::vector<TimeSeries> runs,
                                    std::vector<std::uint64_t> seeds);

// Long-format metric,run,value text shared by `run` (summary.csv) and `summarize`
// (stdout), so recomputing from the recorded CSVs reproduces the file byte for byte.
std::string summary_csv(const BenchConfig& c, const ExperimentResult& r);

}  // namespace benchsim
