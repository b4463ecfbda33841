#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "specgsa/estimators.hpp"
#include "specgsa/experiment/config.hpp"

namespace specgsa::experiment {

struct ScalingRecord {
    std::size_t n = 0;
    std::size_t d = 0;
    Estimate gsa_radial;
    Estimate gsa_window;
    Estimate q_radial;
    double upper_bound = 0.0; // 2 sqrt(n) / sqrt(pi d)
    double scale_ref = 0.0;   // sqrt(n / d)
    GoodnessReport goodness;
    std::uint64_t instance_seed = 0;
    std::uint64_t rejected_seed = 0; // nonzero when the first draw was not good
    double window = 0.0;
    double runtime_seconds = 0.0;
};

double gsa_upper_bound(std::size_t n, std::size_t d) noexcept;

/// Seed of the first instance tried for (n, d).
std::uint64_t instance_seed_for(std::uint64_t master_seed, std::size_t n, std::size_t d) noexcept;
/// Seed for the Monte Carlo samples on a given instance.
std::uint64_t sample_seed_for(std::uint64_t instance_seed) noexcept;

/// For each (n, d): draw an instance, probe goodness (resampling once with
/// the next seed when not good, aborting on a second failure), then run the
/// radial and window estimators. Records come out in ascending (n, d).
std::vector<ScalingRecord> run_scaling(const ExperimentConfig& config);

struct SlopeFit {
    double slope = 0.0;
    double halfwidth = 0.0;
    double intercept = 0.0;
};

/// Least-squares slope of log(gsa_radial) on log(n) with a 95% halfwidth
/// propagated from the per-record standard errors. Needs >= 3 records.
SlopeFit fit_loglog_slope(std::span<const ScalingRecord> records);

} // namespace specgsa::experiment
