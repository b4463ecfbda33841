#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "specgsa/spectrahedron.hpp"

namespace specgsa {

enum class EstimateMethod { window, radial };
std::string_view to_string(EstimateMethod m) noexcept;

/// A Monte Carlo result. std_error comes from 16 batch means except for
/// shell_measure, which reports the binomial standard error.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::size_t skipped = 0;
    EstimateMethod method = EstimateMethod::window;
    std::optional<double> window;
};

/// Skip fraction above which a run throws SkipBudgetExceeded.
inline constexpr double kMaxSkipFraction = 1e-3;
inline constexpr std::size_t kMinWindowSamples = 10'000;
inline constexpr std::size_t kMinRadialSamples = 1'000;

// Every estimator draws sample i from make_stream(seed, i), so results depend
// on (instance, m, seed) only, never on `workers`.

/// Density q of f(x), x ~ N(0, I_n), at the threshold, from a centered window.
Estimate estimate_q_window(const Spectrahedron& s, std::size_t m, double window, std::uint64_t seed,
                           unsigned workers = 1);

/// q(t) = E_y[h(t/s(y)) / s(y); s(y) > 0] with y uniform on S^(n-1),
/// s(y) = f(y) and h the chi_n density. Window-free.
Estimate estimate_q_radial(const Spectrahedron& s, std::size_t m, std::uint64_t seed, unsigned workers = 1);

/// Coarea-weighted inner window: mean of 1{f(x) in (t - w, t]} ||grad f(x)|| / w.
Estimate estimate_gsa_window(const Spectrahedron& s, std::size_t m, double window, std::uint64_t seed,
                             unsigned workers = 1);

/// GSA = E_y[||W_v(y)|| h(t/s(y)) / s(y); s(y) > 0], v(y) the top eigenvector.
Estimate estimate_gsa_radial(const Spectrahedron& s, std::size_t m, std::uint64_t seed, unsigned workers = 1);

struct RadialEstimates {
    Estimate q;
    Estimate gsa;
};

/// estimate_q_radial and estimate_gsa_radial from one pass over the same directions.
RadialEstimates estimate_radial(const Spectrahedron& s, std::size_t m, std::uint64_t seed, unsigned workers = 1);

/// Window GSA at w/2, w, 2w on common samples, w = 0.25 sigma_hat m^(-1/5)
/// of the sampled f values unless `window` is given.
struct WindowSweep {
    double window = 0.0;
    Estimate half;
    Estimate base;
    Estimate twice;
};

WindowSweep estimate_gsa_window_sweep(const Spectrahedron& s, std::size_t m, std::optional<double> window,
                                      std::uint64_t seed, unsigned workers = 1);

/// Default window for f samples of this instance (same samples the window estimators use).
double default_f_window(const Spectrahedron& s, std::size_t m, std::uint64_t seed, unsigned workers = 1);

enum class ShellSide { inner, outer };

/// Gaussian measure of (t - delta sqrt(n), t] (inner) or (t, t + delta sqrt(n)] (outer).
Estimate shell_measure(const Spectrahedron& s, double delta, ShellSide side, std::size_t m, std::uint64_t seed,
                       unsigned workers = 1);

struct CoverageCheck {
    double probability = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
    /// Mean of the underlying statistic (lambda_max or r^2).
    double mean = 0.0;
};

/// Fraction of GOE(d) draws with lambda_max in 2 sqrt(d) [1 - eta, 1 + eta].
CoverageCheck tracy_widom_check(std::size_t d, double eta, std::size_t trials, std::uint64_t seed,
                                unsigned workers = 1);

/// Fraction of chi_n draws with n - 2 sqrt(n x) <= r^2 <= n + 2 sqrt(n x) + 2x.
CoverageCheck chi2_coverage_check(std::size_t n, double x, std::size_t trials, std::uint64_t seed);

struct SandwichResult {
    double witness_success_rate = 0.0;
    double outer_containment_rate = 0.0;
    std::size_t points = 0;
    double max_witness_norm = 0.0;
    /// max over outer points of f(x) - (t + 2 delta sqrt(n)); <= 0 when contained.
    double max_outer_excess = 0.0;
};

/// Inner: points scaled into (t - delta sqrt(n), t] get an inner_shell_witness.
/// Outer: boundary points pushed outward by at most delta along a direction
/// with positive W_v component must satisfy f <= t + 2 delta sqrt(n).
/// Throws PreconditionError unless `goodness.verdict == Verdict::good`.
SandwichResult sandwich_check(const Spectrahedron& s, const GoodnessReport& goodness, double delta, std::size_t m,
                              std::uint64_t seed);

} // namespace specgsa
