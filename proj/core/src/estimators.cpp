#include "specgsa/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "specgsa/distributions.hpp"
#include "specgsa/errors.hpp"

namespace specgsa {

namespace {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

void require_samples(std::size_t m, std::size_t minimum, const char* op) {
    if (m < minimum) {
        throw InvalidParameter(std::string(op) + ": need at least " + std::to_string(minimum) + " samples, got " +
                               std::to_string(m));
    }
}

void check_skips(std::size_t skipped, std::size_t m, const char* op) {
    if (static_cast<double>(skipped) > kMaxSkipFraction * static_cast<double>(m)) {
        throw SkipBudgetExceeded(std::string(op) + ": skipped " + std::to_string(skipped) + " of " +
                                 std::to_string(m) + " samples (degenerate top eigenvalue)");
    }
}

Estimate make_estimate(std::span<const double> contributions, std::size_t skipped, EstimateMethod method,
                       std::optional<double> window) {
    const BatchMean bm = batch_mean(contributions);
    return {bm.mean, bm.std_error, contributions.size(), skipped, method, window};
}

std::vector<double> gaussian_point(const Spectrahedron& s, std::uint64_t seed, std::size_t i) {
    auto stream = make_stream(seed, i);
    return sample_gaussian_vector(stream, s.n());
}

std::vector<double> sample_f_values(const Spectrahedron& s, std::size_t m, std::uint64_t seed, unsigned workers) {
    std::vector<double> values(m);
    detail::parallel_for(m, workers, [&](std::size_t i) { values[i] = f_value(s, gaussian_point(s, seed, i)); });
    return values;
}

/// ||grad f(x)||, or nullopt when the top eigenvalue is numerically repeated.
std::optional<double> gradient_norm(const Spectrahedron& s, std::span<const double> x) {
    const SymMatrix pencil = s.family().assemble(x);
    const EigenPair top = lambda_max(pencil);
    if (!top_is_simple(top, pencil.frobenius_norm())) {
        return std::nullopt;
    }
    const std::vector<double> w = s.family().quadratic_forms(top.vector);
    return std::sqrt(dot(w, w));
}

void require_window(double window, const char* op) {
    if (!(window > 0.0) || !std::isfinite(window)) {
        throw InvalidParameter(std::string(op) + ": window must be positive and finite");
    }
}

} // namespace

std::string_view to_string(EstimateMethod m) noexcept { return m == EstimateMethod::radial ? "radial" : "window"; }

Estimate estimate_q_window(const Spectrahedron& s, std::size_t m, double window, std::uint64_t seed,
                           unsigned workers) {
    require_samples(m, kMinWindowSamples, "estimate_q_window");
    require_window(window, "estimate_q_window");
    const std::vector<double> values = sample_f_values(s, m, seed, workers);
    const DensityEstimate est = density_at(values, s.threshold(), window, Sidedness::centered);
    return {est.value, est.std_error, m, 0, EstimateMethod::window, window};
}

double default_f_window(const Spectrahedron& s, std::size_t m, std::uint64_t seed, unsigned workers) {
    require_samples(m, kMinWindowSamples, "default_f_window");
    return default_window(sample_f_values(s, m, seed, workers));
}

namespace {

std::vector<Estimate> gsa_window_multi(const Spectrahedron& s, std::size_t m, std::span<const double> windows,
                                       std::span<const double> values, std::uint64_t seed, unsigned workers) {
    const double t = s.threshold();
    const double widest = *std::max_element(windows.begin(), windows.end());
    std::vector<double> norms(m, 0.0);
    std::vector<unsigned char> skipped(m, 0);
    detail::parallel_for(m, workers, [&](std::size_t i) {
        if (values[i] > t - widest && values[i] <= t) {
            const auto norm = gradient_norm(s, gaussian_point(s, seed, i));
            if (norm) {
                norms[i] = *norm;
            } else {
                skipped[i] = 1;
            }
        }
    });
    std::size_t skip_count = 0;
    for (unsigned char k : skipped) {
        skip_count += k;
    }
    check_skips(skip_count, m, "estimate_gsa_window");

    std::vector<Estimate> out;
    std::vector<double> contributions(m);
    for (double w : windows) {
        for (std::size_t i = 0; i < m; ++i) {
            const bool in = values[i] > t - w && values[i] <= t;
            contributions[i] = in ? norms[i] / w : 0.0;
        }
        out.push_back(make_estimate(contributions, skip_count, EstimateMethod::window, w));
    }
    return out;
}

} // namespace

Estimate estimate_gsa_window(const Spectrahedron& s, std::size_t m, double window, std::uint64_t seed,
                             unsigned workers) {
    require_samples(m, kMinWindowSamples, "estimate_gsa_window");
    require_window(window, "estimate_gsa_window");
    const std::vector<double> values = sample_f_values(s, m, seed, workers);
    const double windows[] = {window};
    return gsa_window_multi(s, m, windows, values, seed, workers).front();
}

WindowSweep estimate_gsa_window_sweep(const Spectrahedron& s, std::size_t m, std::optional<double> window,
                                      std::uint64_t seed, unsigned workers) {
    require_samples(m, kMinWindowSamples, "estimate_gsa_window_sweep");
    const std::vector<double> values = sample_f_values(s, m, seed, workers);
    const double w = window ? *window : default_window(values);
    require_window(w, "estimate_gsa_window_sweep");
    const double windows[] = {0.5 * w, w, 2.0 * w};
    const auto est = gsa_window_multi(s, m, windows, values, seed, workers);
    return {w, est[0], est[1], est[2]};
}

RadialEstimates estimate_radial(const Spectrahedron& s, std::size_t m, std::uint64_t seed, unsigned workers) {
    require_samples(m, kMinRadialSamples, "estimate_radial");
    const double t = s.threshold();
    const ChiDensity chi(s.n());
    std::vector<double> q(m, 0.0);
    std::vector<double> gsa(m, 0.0);
    std::vector<unsigned char> q_skip(m, 0);
    std::vector<unsigned char> gsa_skip(m, 0);
    detail::parallel_for(m, workers, [&](std::size_t i) {
        auto stream = make_stream(seed, i);
        const std::vector<double> y = sample_sphere(stream, s.n());
        const SymMatrix pencil = s.family().assemble(y);
        const EigenPair top = lambda_max(pencil);
        const double sv = top.value;
        if (sv == 0.0) {
            q_skip[i] = gsa_skip[i] = 1;
            return;
        }
        if (sv < 0.0) {
            return; // t/s < 0 is outside the chi support
        }
        const double weight = chi(t / sv) / sv;
        q[i] = weight;
        if (weight == 0.0) {
            return;
        }
        if (!top_is_simple(top, pencil.frobenius_norm())) {
            gsa_skip[i] = 1;
            return;
        }
        const std::vector<double> w = s.family().quadratic_forms(top.vector);
        gsa[i] = std::sqrt(dot(w, w)) * weight;
    });
    std::size_t q_skips = 0;
    std::size_t gsa_skips = 0;
    for (std::size_t i = 0; i < m; ++i) {
        q_skips += q_skip[i];
        gsa_skips += gsa_skip[i];
    }
    check_skips(gsa_skips, m, "estimate_radial");
    return {make_estimate(q, q_skips, EstimateMethod::radial, std::nullopt),
            make_estimate(gsa, gsa_skips, EstimateMethod::radial, std::nullopt)};
}

Estimate estimate_q_radial(const Spectrahedron& s, std::size_t m, std::uint64_t seed, unsigned workers) {
    require_samples(m, kMinRadialSamples, "estimate_q_radial");
    const double t = s.threshold();
    const ChiDensity chi(s.n());
    std::vector<double> q(m, 0.0);
    std::vector<unsigned char> skip(m, 0);
    detail::parallel_for(m, workers, [&](std::size_t i) {
        auto stream = make_stream(seed, i);
        const double sv = f_value(s, sample_sphere(stream, s.n()));
        if (sv == 0.0) {
            skip[i] = 1;
        } else if (sv > 0.0) {
            q[i] = chi(t / sv) / sv;
        }
    });
    std::size_t skips = 0;
    for (unsigned char k : skip) {
        skips += k;
    }
    check_skips(skips, m, "estimate_q_radial");
    return make_estimate(q, skips, EstimateMethod::radial, std::nullopt);
}

Estimate estimate_gsa_radial(const Spectrahedron& s, std::size_t m, std::uint64_t seed, unsigned workers) {
    return estimate_radial(s, m, seed, workers).gsa;
}

Estimate shell_measure(const Spectrahedron& s, double delta, ShellSide side, std::size_t m, std::uint64_t seed,
                       unsigned workers) {
    require_samples(m, kMinWindowSamples, "shell_measure");
    if (!(delta > 0.0)) {
        throw InvalidParameter("shell_measure: delta must be positive");
    }
    const double t = s.threshold();
    const double width = delta * std::sqrt(static_cast<double>(s.n()));
    const std::vector<double> values = sample_f_values(s, m, seed, workers);
    std::size_t hits = 0;
    for (double f : values) {
        const bool in = side == ShellSide::inner ? (f > t - width && f <= t) : (f > t && f <= t + width);
        hits += in ? 1 : 0;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(m);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(m)), m, 0, EstimateMethod::window, width};
}

CoverageCheck tracy_widom_check(std::size_t d, double eta, std::size_t trials, std::uint64_t seed,
                                unsigned workers) {
    if (trials < 100) {
        throw InvalidParameter("tracy_widom_check: need at least 100 trials");
    }
    if (!(eta > 0.0 && eta < 1.0)) {
        throw InvalidParameter("tracy_widom_check: eta must lie in (0, 1)");
    }
    std::vector<double> top(trials);
    detail::parallel_for(trials, workers, [&](std::size_t i) {
        auto stream = make_stream(seed, i);
        top[i] = lambda_max_value(sample_goe(stream, d));
    });
    const double edge = 2.0 * std::sqrt(static_cast<double>(d));
    std::size_t hits = 0;
    double sum = 0.0;
    for (double v : top) {
        hits += (v >= edge * (1.0 - eta) && v <= edge * (1.0 + eta)) ? 1 : 0;
        sum += v;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials, sum / static_cast<double>(trials)};
}

CoverageCheck chi2_coverage_check(std::size_t n, double x, std::size_t trials, std::uint64_t seed) {
    if (trials < 1000) {
        throw InvalidParameter("chi2_coverage_check: need at least 1000 trials");
    }
    if (!(x > 0.0)) {
        throw InvalidParameter("chi2_coverage_check: x must be positive");
    }
    const double nd = static_cast<double>(n);
    const double lo = nd - 2.0 * std::sqrt(nd * x);
    const double hi = nd + 2.0 * std::sqrt(nd * x) + 2.0 * x;
    std::size_t hits = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        auto stream = make_stream(seed, i);
        const double r = sample_chi(stream, n);
        const double r2 = r * r;
        hits += (r2 >= lo && r2 <= hi) ? 1 : 0;
        sum += r2;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials, sum / static_cast<double>(trials)};
}

namespace {

constexpr int kMaxShellAttempts = 64;

// Gaussian x rescaled so that f lands at a uniform level in (t - width, t].
std::vector<double> inner_shell_point(const Spectrahedron& s, RngStream& stream, double width) {
    const double t = s.threshold();
    for (int attempt = 0; attempt < kMaxShellAttempts; ++attempt) {
        std::vector<double> x = sample_gaussian_vector(stream, s.n());
        const double level = t - width * stream.uniform();
        const double fx = f_value(s, x);
        if (!(fx > 0.0)) {
            continue;
        }
        for (double& v : x) {
            v *= level / fx;
        }
        const double check = f_value(s, x);
        if (check >= t - width && check <= t) {
            return x;
        }
    }
    throw NumericalFailure("sandwich_check: could not place a point in the inner shell", 0.0, 0.0);
}

} // namespace

SandwichResult sandwich_check(const Spectrahedron& s, const GoodnessReport& goodness, double delta, std::size_t m,
                              std::uint64_t seed) {
    if (goodness.verdict != Verdict::good) {
        throw PreconditionError("sandwich_check: matrix family is not good (verdict " +
                                std::string(to_string(goodness.verdict)) + ")");
    }
    if (!(delta > 0.0 && delta <= 1e-2)) {
        throw InvalidParameter("sandwich_check: delta must lie in (0, 1e-2]");
    }
    if (m == 0) {
        throw InvalidParameter("sandwich_check: need at least one point");
    }
    const double t = s.threshold();
    const double sqrt_n = std::sqrt(static_cast<double>(s.n()));
    const double width = delta * sqrt_n;
    const double outer_limit = t + 2.0 * delta * sqrt_n;

    SandwichResult out;
    out.points = m;
    out.max_outer_excess = -std::numeric_limits<double>::infinity();
    std::size_t witnessed = 0;
    std::size_t contained = 0;
    for (std::size_t i = 0; i < m; ++i) {
        auto stream = make_stream(seed, i);

        const std::vector<double> x = inner_shell_point(s, stream, width);
        const ShellWitness w = inner_shell_witness(s, x, delta);
        out.max_witness_norm = std::max(out.max_witness_norm, w.y_norm);
        witnessed += w.valid ? 1 : 0;

        // Outer: b on the boundary, x' = b + rho u with <u, W_v(b)> > 0 so
        // that x' is certifiably outside T and within rho <= delta of T.
        for (int attempt = 0;; ++attempt) {
            if (attempt == kMaxShellAttempts) {
                throw NumericalFailure("sandwich_check: could not place an outer point", 0.0, 0.0);
            }
            std::vector<double> b = sample_gaussian_vector(stream, s.n());
            const double fb = f_value(s, b);
            if (!(fb > 0.0)) {
                continue;
            }
            for (double& v : b) {
                v *= t / fb;
            }
            const EigenPair top = pencil_top(s, b);
            const std::vector<double> wv = s.family().quadratic_forms(top.vector);
            std::vector<double> u = sample_sphere(stream, s.n());
            double along = dot(u, wv);
            if (along == 0.0) {
                continue;
            }
            if (along < 0.0) {
                for (double& v : u) {
                    v = -v;
                }
            }
            const double rho = delta * stream.uniform_pos();
            for (std::size_t k = 0; k < b.size(); ++k) {
                b[k] += rho * u[k];
            }
            const double fx = f_value(s, b);
            if (!(fx > t)) {
                continue;
            }
            out.max_outer_excess = std::max(out.max_outer_excess, fx - outer_limit);
            contained += fx <= outer_limit ? 1 : 0;
            break;
        }
    }
    out.witness_success_rate = static_cast<double>(witnessed) / static_cast<double>(m);
    out.outer_containment_rate = static_cast<double>(contained) / static_cast<double>(m);
    return out;
}

} // namespace specgsa
