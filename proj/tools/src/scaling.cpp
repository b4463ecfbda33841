#include "specgsa/experiment/scaling.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "specgsa/errors.hpp"

namespace specgsa::experiment {

namespace {

struct ProbedInstance {
    Spectrahedron instance;
    GoodnessReport goodness;
};

ProbedInstance probe_instance(std::uint64_t seed, std::size_t n, std::size_t d, const ExperimentConfig& config) {
    Spectrahedron s = instance_from_seed(seed, n, d);
    auto stream = make_stream(seed, kInstanceStreamId - 1);
    GoodnessReport report = goodness_probe(s, stream, config.probes, config.restarts);
    return {std::move(s), report};
}

} // namespace

double gsa_upper_bound(std::size_t n, std::size_t d) noexcept {
    return 2.0 * std::sqrt(static_cast<double>(n)) / std::sqrt(std::numbers::pi * static_cast<double>(d));
}

std::uint64_t instance_seed_for(std::uint64_t master_seed, std::size_t n, std::size_t d) noexcept {
    return mix_seed(master_seed, (static_cast<std::uint64_t>(n) << 32) ^ static_cast<std::uint64_t>(d));
}

std::uint64_t sample_seed_for(std::uint64_t instance_seed) noexcept { return mix_seed(instance_seed, 0x5a4d); }

std::vector<ScalingRecord> run_scaling(const ExperimentConfig& config) {
    const GridPlan plan = plan_grid(config);
    std::vector<ScalingRecord> records;
    records.reserve(plan.pairs.size());
    for (const auto& [n, d] : plan.pairs) {
        const auto start = std::chrono::steady_clock::now();
        ScalingRecord rec;
        rec.n = n;
        rec.d = d;
        rec.instance_seed = instance_seed_for(config.seed, n, d);

        ProbedInstance probed = probe_instance(rec.instance_seed, n, d, config);
        if (probed.goodness.verdict != Verdict::good) {
            rec.rejected_seed = rec.instance_seed;
            rec.instance_seed += 1;
            probed = probe_instance(rec.instance_seed, n, d, config);
            if (probed.goodness.verdict != Verdict::good) {
                throw PreconditionError("run_scaling: two consecutive instances for (n, d) = (" + std::to_string(n) +
                                        ", " + std::to_string(d) + ") failed the goodness probe (seeds " +
                                        std::to_string(rec.rejected_seed) + ", " + std::to_string(rec.instance_seed) +
                                        ")");
            }
        }
        rec.goodness = probed.goodness;

        const std::uint64_t seed = sample_seed_for(rec.instance_seed);
        const RadialEstimates radial = estimate_radial(probed.instance, config.samples, seed, config.workers);
        const WindowSweep sweep =
            estimate_gsa_window_sweep(probed.instance, config.samples, config.window, seed, config.workers);
        rec.gsa_radial = radial.gsa;
        rec.q_radial = radial.q;
        rec.gsa_window = sweep.base;
        rec.window = sweep.window;
        rec.upper_bound = gsa_upper_bound(n, d);
        rec.scale_ref = std::sqrt(static_cast<double>(n) / static_cast<double>(d));
        rec.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        records.push_back(std::move(rec));
    }
    return records;
}

SlopeFit fit_loglog_slope(std::span<const ScalingRecord> records) {
    if (records.size() < 3) {
        throw InvalidParameter("fit_loglog_slope: need at least 3 records, got " + std::to_string(records.size()));
    }
    const auto count = static_cast<double>(records.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& r : records) {
        if (!(r.gsa_radial.value > 0.0) || r.n == 0) {
            throw InvalidParameter("fit_loglog_slope: gsa_radial must be positive for a log fit");
        }
        mean_x += std::log(static_cast<double>(r.n));
        mean_y += std::log(r.gsa_radial.value);
    }
    mean_x /= count;
    mean_y /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& r : records) {
        const double dx = std::log(static_cast<double>(r.n)) - mean_x;
        sxx += dx * dx;
        sxy += dx * (std::log(r.gsa_radial.value) - mean_y);
    }
    if (sxx == 0.0) {
        throw InvalidParameter("fit_loglog_slope: records need at least two distinct n");
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    double var = 0.0;
    for (const auto& r : records) {
        const double weight = (std::log(static_cast<double>(r.n)) - mean_x) / sxx;
        const double rel = r.gsa_radial.std_error / r.gsa_radial.value;
        var += weight * weight * rel * rel;
    }
    fit.halfwidth = 1.96 * std::sqrt(var);
    return fit;
}

} // namespace specgsa::experiment
