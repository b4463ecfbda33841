#include "specgsa/experiment/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <string>

#include "specgsa/distributions.hpp"
#include "specgsa/errors.hpp"
#include "specgsa/estimators.hpp"
#include "specgsa/experiment/output.hpp"
#include "specgsa/experiment/scaling.hpp"

namespace specgsa::experiment {

namespace {

CheckResult at_most(std::string name, double measured, double threshold, std::string detail = {}) {
    return {std::move(name), measured, "<=", threshold, measured <= threshold, std::move(detail)};
}

CheckResult at_least(std::string name, double measured, double threshold, std::string detail = {}) {
    return {std::move(name), measured, ">=", threshold, measured >= threshold, std::move(detail)};
}

void chi_density_checks(std::vector<CheckResult>& out) {
    for (std::size_t n : {1u, 4u, 100u, 10000u}) {
        const double root = std::sqrt(static_cast<double>(n));
        const double hi = root + 10.0;
        double worst = 0.0;
        for (int k = 1; k <= 1000; ++k) {
            const double x = hi * k / 1000.0;
            worst = std::max(worst, chi_pdf(n, x) * std::sqrt(std::numbers::pi) * x / root);
        }
        out.push_back(at_most("chi_pdf_upper_bound n=" + std::to_string(n), worst, 1.0,
                              "max of h(x) sqrt(pi) x / sqrt(n) over 1000 grid points"));
    }
    for (std::size_t n : {4u, 100u, 10000u}) {
        const double root = std::sqrt(static_cast<double>(n));
        double lowest = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 1000; ++k) {
            lowest = std::min(lowest, chi_pdf(n, root - 0.1 + 0.2 * k / 1000.0));
        }
        out.push_back(at_least("chi_pdf_lower_bound n=" + std::to_string(n), lowest, 0.1,
                               "min of h over [sqrt(n) - 0.1, sqrt(n) + 0.1], c = 0.1"));
    }
}

void chi2_checks(std::vector<CheckResult>& out, std::uint64_t seed) {
    for (double x : {1.0, 2.0, 4.0}) {
        const CoverageCheck c = chi2_coverage_check(100, x, 10'000, mix_seed(seed, 0xC2));
        const double bound = 1.0 - 2.0 * std::exp(-x) - 3.0 * c.std_error;
        out.push_back(at_least("chi2_coverage n=100 x=" + format_number(x), c.probability, bound,
                               "1 - 2 exp(-x) - 3 se"));
    }
}

void product_pdf_checks(std::vector<CheckResult>& out) {
    const JointDensity normals = [](double a, double b) {
        return gaussian_pdf_cdf(a).pdf * gaussian_pdf_cdf(b).pdf;
    };
    for (double z : {0.5, 1.0, 2.0}) {
        const double expected = std::cyl_bessel_k(0.0, z) / std::numbers::pi;
        const double got = product_pdf(normals, z);
        out.push_back(at_most("product_pdf_normals z=" + format_number(z), std::abs(got - expected), 1e-4,
                              "|g(z) - K0(z)/pi|, g = " + format_number(got)));
    }
}

void edge_checks(std::vector<CheckResult>& out, std::uint64_t seed, unsigned workers) {
    const CoverageCheck c = tracy_widom_check(64, 0.1, 2000, mix_seed(seed, 0x7D), workers);
    out.push_back(at_least("goe_edge_mean_lower d=64", c.mean, 15.2));
    out.push_back(at_most("goe_edge_mean_upper d=64", c.mean, 15.6));
    out.push_back(at_least("goe_edge_concentration d=64 eta=0.1", c.probability, 0.90));
}

void net_checks(std::vector<CheckResult>& out, std::uint64_t seed) {
    for (std::size_t d : {1u, 2u, 3u}) {
        for (double eps : {0.3, 0.5}) {
            const auto net = epsilon_net(d, eps);
            const double bound = std::pow(3.0 / eps, static_cast<double>(d));
            const std::string tag = " d=" + std::to_string(d) + " eps=" + format_number(eps);
            out.push_back(at_most("epsilon_net_size" + tag, static_cast<double>(net.size()), bound));
            auto stream = make_stream(mix_seed(seed, 0xE7), d * 100 + static_cast<std::size_t>(eps * 10));
            const NetCoverage cov = probe_net_coverage(net, eps, stream, 10'000);
            out.push_back(at_most("epsilon_net_cover" + tag, cov.max_distance, eps,
                                  std::to_string(cov.covered) + "/" + std::to_string(cov.probes) + " probes covered"));
        }
    }
}

void instance_checks(std::vector<CheckResult>& out, const ExperimentConfig& config) {
    constexpr std::size_t n = 512;
    constexpr std::size_t d = 8;
    const std::uint64_t seed = instance_seed_for(config.seed, n, d);
    const Spectrahedron s = config.inject_zero_family
                                ? Spectrahedron(MatrixFamily(n, d, std::vector<double>(n * d * (d + 1) / 2, 0.0)))
                                : instance_from_seed(seed, n, d);
    auto stream = make_stream(seed, kInstanceStreamId - 1);
    const GoodnessReport g = goodness_probe(s, stream, 10'000, 20);
    const double root = std::sqrt(static_cast<double>(n));
    out.push_back(at_least("goodness_min_norm n=512 d=8", g.min_norm, 0.5 * root));
    out.push_back(at_most("goodness_max_norm n=512 d=8", g.max_norm, 2.0 * root,
                          "verdict " + std::string(to_string(g.verdict))));
    try {
        const SandwichResult r = sandwich_check(s, g, 1e-3, 500, mix_seed(seed, 0x5A));
        out.push_back(at_least("sandwich_witness_rate n=512 d=8", r.witness_success_rate, 1.0,
                               "max |y| = " + format_number(r.max_witness_norm) + " vs 4 delta = 0.004"));
        out.push_back(at_least("sandwich_outer_rate n=512 d=8", r.outer_containment_rate, 1.0));
    } catch (const PreconditionError& e) {
        out.push_back({"sandwich_witness_rate n=512 d=8", 0.0, ">=", 1.0, false, e.what()});
    }
}

void estimator_checks(std::vector<CheckResult>& out, const ExperimentConfig& config) {
    {
        const Spectrahedron s = instance_from_seed(instance_seed_for(config.seed, 256, 1), 256, 1);
        double norm2 = 0.0;
        for (double a : s.family().block()) {
            norm2 += a * a;
        }
        const double oracle = gaussian_pdf_cdf(s.threshold() / std::sqrt(norm2)).pdf;
        const Estimate e = estimate_gsa_radial(s, config.samples, mix_seed(config.seed, 0x4A), config.workers);
        const double tol = std::max(0.02 * oracle, 3.0 * e.std_error);
        out.push_back(at_most("halfspace_gsa_radial n=256", std::abs(e.value - oracle), tol,
                              "estimate " + format_number(e.value) + ", oracle " + format_number(oracle)));
    }
    const Spectrahedron s = instance_from_seed(instance_seed_for(config.seed, 256, 8), 256, 8);
    const RadialEstimates r = estimate_radial(s, config.samples, mix_seed(config.seed, 0x4B), config.workers);
    out.push_back(at_most("q_upper_bound n=256 d=8", r.q.value, 1.0 / (2.0 * std::sqrt(std::numbers::pi * 8.0)) +
                                                                     3.0 * r.q.std_error));
    out.push_back(at_most("gsa_upper_bound n=256 d=8", r.gsa.value,
                          gsa_upper_bound(256, 8) * 1.05 + 3.0 * r.gsa.std_error));
}

template <class F>
void guarded(std::vector<CheckResult>& out, const std::string& name, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        out.push_back({name, 0.0, "ok", 0.0, false, std::string("error: ") + e.what()});
    }
}

} // namespace

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport run_verify_suite(const ExperimentConfig& config) {
    VerifyReport report;
    auto& out = report.checks;
    guarded(out, "chi_density", [&] { chi_density_checks(out); });
    guarded(out, "chi2_coverage", [&] { chi2_checks(out, config.seed); });
    guarded(out, "product_pdf", [&] { product_pdf_checks(out); });
    guarded(out, "goe_edge", [&] { edge_checks(out, config.seed, config.workers); });
    guarded(out, "epsilon_net", [&] { net_checks(out, config.seed); });
    guarded(out, "goodness_and_sandwich", [&] { instance_checks(out, config); });
    guarded(out, "estimators", [&] { estimator_checks(out, config); });
    return report;
}

std::string format_report(const VerifyReport& report) {
    std::ostringstream out;
    std::size_t passed = 0;
    for (const auto& c : report.checks) {
        passed += c.passed ? 1 : 0;
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << ": measured " << format_number(c.measured) << ' '
            << c.relation << ' ' << format_number(c.threshold);
        if (!c.detail.empty()) {
            out << "  (" << c.detail << ')';
        }
        out << '\n';
    }
    out << passed << '/' << report.checks.size() << " checks passed\n";
    return out.str();
}

} // namespace specgsa::experiment
