#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "specgsa/errors.hpp"
#include "specgsa/spectrahedron.hpp"

namespace specgsa {

namespace {

constexpr double kInitialStep = 0.1;
constexpr double kMinStep = 1e-15;

double norm2(std::span<const double> v) noexcept {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return s;
}

double objective(const MatrixFamily& family, std::span<const double> v) { return norm2(family.quadratic_forms(v)); }

// Euclidean gradient of ||W_v||^2: 4 sum_i (v^T A(i) v) A(i) v.
std::vector<double> euclidean_gradient(const MatrixFamily& family, std::span<const double> v) {
    const std::vector<double> w = family.quadratic_forms(v);
    const SymMatrix m = family.assemble(w);
    const std::size_t d = v.size();
    std::vector<double> g(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            s += m(i, j) * v[j];
        }
        g[i] = 4.0 * s;
    }
    return g;
}

} // namespace

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::good:
        return "good";
    case Verdict::not_good:
        return "not_good";
    case Verdict::inconclusive:
        break;
    }
    return "inconclusive";
}

SphereOptimum sphere_optimize_wnorm(const Spectrahedron& s, std::span<const double> v0, OptimizeDirection direction,
                                    std::size_t max_iters, double tol) {
    if (v0.size() != s.d()) {
        throw InvalidParameter("sphere_optimize_wnorm: v0 has length " + std::to_string(v0.size()) +
                               ", expected d = " + std::to_string(s.d()));
    }
    if (!(std::abs(std::sqrt(norm2(v0)) - 1.0) <= 1e-8)) {
        throw InvalidParameter("sphere_optimize_wnorm: v0 must be a unit vector");
    }
    const MatrixFamily& family = s.family();
    const double sign = direction == OptimizeDirection::maximize ? 1.0 : -1.0;
    const std::size_t d = s.d();

    SphereOptimum out;
    out.v.assign(v0.begin(), v0.end());
    double value = objective(family, out.v);
    std::vector<double> trial(d);

    for (; out.iterations < max_iters; ++out.iterations) {
        std::vector<double> g = euclidean_gradient(family, out.v);
        double radial = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            radial += g[i] * out.v[i];
        }
        const double g_norm = std::sqrt(norm2(g));
        for (std::size_t i = 0; i < d; ++i) {
            g[i] -= radial * out.v[i];
        }
        const double tangent_norm = std::sqrt(norm2(g));
        if (tangent_norm <= 1e-12 * g_norm || tangent_norm == 0.0) {
            out.converged = true;
            break;
        }
        // Geodesic step along the normalized tangent direction.
        double step = kInitialStep;
        double next = value;
        bool improved = false;
        while (step >= kMinStep) {
            const double c = std::cos(step);
            const double sn = std::sin(step) * sign / tangent_norm;
            for (std::size_t i = 0; i < d; ++i) {
                trial[i] = c * out.v[i] + sn * g[i];
            }
            const double inv = 1.0 / std::sqrt(norm2(trial));
            for (double& t : trial) {
                t *= inv;
            }
            next = objective(family, trial);
            if (sign * (next - value) > 0.0) {
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            out.converged = true;
            break;
        }
        const double change = std::abs(next - value);
        out.v = trial;
        value = next;
        if (change <= tol * std::max(std::abs(value), std::numeric_limits<double>::min())) {
            out.converged = true;
            ++out.iterations;
            break;
        }
    }
    out.norm = std::sqrt(value);
    return out;
}

GoodnessReport goodness_probe(const Spectrahedron& s, RngStream& stream, std::size_t probes,
                              std::size_t optimizer_restarts) {
    if (probes == 0) {
        throw InvalidParameter("goodness_probe: probes must be at least 1");
    }
    const MatrixFamily& family = s.family();
    GoodnessReport report;
    report.min_norm = std::numeric_limits<double>::infinity();
    report.max_norm = 0.0;
    report.probes = probes;
    std::vector<double> v(s.d());
    auto observe = [&report](double norm) {
        report.min_norm = std::min(report.min_norm, norm);
        report.max_norm = std::max(report.max_norm, norm);
    };
    for (std::size_t k = 0; k < probes; ++k) {
        sample_sphere(stream, v);
        observe(std::sqrt(norm2(family.quadratic_forms(v))));
    }
    for (std::size_t r = 0; r < optimizer_restarts; ++r) {
        for (auto direction : {OptimizeDirection::minimize, OptimizeDirection::maximize}) {
            sample_sphere(stream, v);
            observe(sphere_optimize_wnorm(s, v, direction).norm);
            ++report.optimizer_runs;
        }
    }
    const double root_n = std::sqrt(static_cast<double>(s.n()));
    const bool inside = report.min_norm >= 0.5 * root_n && report.max_norm <= 2.0 * root_n;
    report.verdict = inside ? Verdict::good : Verdict::not_good;
    return report;
}

} // namespace specgsa
