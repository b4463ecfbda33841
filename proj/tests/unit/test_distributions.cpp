#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "specgsa/distributions.hpp"
#include "specgsa/errors.hpp"
#include "specgsa/rand_core.hpp"

using namespace specgsa;

namespace {

// lnGamma by Stirling's series; accurate to ~1e-16 relative for z >= 20.
double stirling_log_gamma(double z) {
    const double z2 = z * z;
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + 1.0 / (12.0 * z) -
           1.0 / (360.0 * z * z2) + 1.0 / (1260.0 * z * z2 * z2) - 1.0 / (1680.0 * z * z2 * z2 * z2);
}

// K0(x) from its power series:
// K0 = -(ln(x/2) + gamma) I0(x) + sum_k (x^2/4)^k / (k!)^2 * H_k.
double bessel_k0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double i0 = 1.0;
    double tail = 0.0;
    double harmonic = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        i0 += term;
        tail += term * harmonic;
        if (term < 1e-18 * i0) break;
    }
    return -(std::log(0.5 * x) + std::numbers::egamma) * i0 + tail;
}

double std_normal_joint(double a, double b) {
    return std::exp(-0.5 * (a * a + b * b)) / (2.0 * std::numbers::pi);
}

// Trapezoid on a fine grid; enough for a 1e-6 normalization check.
template <class F>
double trapezoid(F f, double lo, double hi, std::size_t steps) {
    const double h = (hi - lo) / static_cast<double>(steps);
    double sum = 0.5 * (f(lo) + f(hi));
    for (std::size_t i = 1; i < steps; ++i) sum += f(lo + h * static_cast<double>(i));
    return sum * h;
}

} // namespace

TEST(LogGamma, ClosedForms) {
    EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
    EXPECT_NEAR(log_gamma(2.0), 0.0, 1e-15);
    EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-14);
    EXPECT_NEAR(log_gamma(0.5), 0.5723649429, 1e-10);
    EXPECT_NEAR(log_gamma(11.0), std::log(3628800.0), 1e-12 * std::log(3628800.0));
}

TEST(LogGamma, StirlingOracleAndBracket) {
    for (double z : {20.0, 50.0, 123.5, 1000.0, 1e4}) {
        const double lg = log_gamma(z);
        EXPECT_NEAR(lg, stirling_log_gamma(z), 1e-12 * std::abs(lg)) << "z = " << z;
        const double lower = 0.5 * std::log(2.0 * std::numbers::pi) + (z - 0.5) * std::log(z) - z;
        // The bracket is ~1/(360 z^3) wide at the top, so allow rounding in lg itself.
        const double slack = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(lg);
        EXPECT_GE(lg, lower - slack);
        EXPECT_LE(lg, lower + 1.0 / (12.0 * z) + slack);
    }
}

TEST(LogGamma, NonPositiveThrows) {
    EXPECT_THROW(log_gamma(0.0), InvalidParameter);
    EXPECT_THROW(log_gamma(-1.5), InvalidParameter);
    EXPECT_THROW(log_gamma(std::nan("")), InvalidParameter);
}

TEST(ChiPdf, ClosedForms) {
    EXPECT_NEAR(chi_pdf(1, 1.0), std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5), 1e-15);
    EXPECT_NEAR(chi_pdf(1, 1.0), 0.4839414, 1e-7);
    EXPECT_NEAR(chi_pdf(2, std::numbers::sqrt2), std::numbers::sqrt2 * std::exp(-1.0), 1e-15);
    EXPECT_NEAR(chi_pdf(2, std::numbers::sqrt2), 0.5202601, 1e-7);
    // chi_3 is the Maxwell density sqrt(2/pi) x^2 e^{-x^2/2}.
    EXPECT_NEAR(chi_pdf(3, 1.7), std::sqrt(2.0 / std::numbers::pi) * 1.7 * 1.7 * std::exp(-0.5 * 1.7 * 1.7), 1e-14);
}

TEST(ChiPdf, Support) {
    for (std::size_t n : {1u, 2u, 7u, 1000u}) {
        EXPECT_EQ(chi_pdf(n, -1.0), 0.0);
    }
    EXPECT_GT(chi_pdf(1, 0.0), 0.0);
    EXPECT_EQ(chi_pdf(2, 0.0), 0.0);
    EXPECT_EQ(chi_pdf(50, 0.0), 0.0);
    EXPECT_THROW(chi_pdf(0, 1.0), InvalidParameter);
}

TEST(ChiPdf, LargeDegreesStayFinite) {
    const double n = 1e6;
    const double at_mode = chi_pdf(1'000'000, std::sqrt(n));
    // chi_n is close to N(sqrt(n), 1/2) for large n.
    EXPECT_NEAR(at_mode, 1.0 / std::sqrt(std::numbers::pi), 1e-3);
    EXPECT_TRUE(std::isfinite(chi_pdf(1'000'000, 2000.0)));
}

TEST(ChiPdf, DensityObjectAgrees) {
    const ChiDensity h(37);
    EXPECT_EQ(h.degrees(), 37u);
    for (double x : {0.5, 3.0, 6.08, 9.0}) {
        EXPECT_NEAR(h(x), chi_pdf(37, x), 1e-15);
        EXPECT_NEAR(std::exp(h.log_density(x)), chi_pdf(37, x), 1e-15);
    }
}

// h(x) <= sqrt(n) / (sqrt(pi) x) for all x > 0.
TEST(ChiPdf, UpperBound) {
    for (std::size_t n : {1u, 4u, 100u, 10000u}) {
        const double hi = std::sqrt(static_cast<double>(n)) + 10.0;
        for (int k = 1; k <= 1000; ++k) {
            const double x = hi * k / 1000.0;
            ASSERT_LE(chi_pdf(n, x), std::sqrt(static_cast<double>(n)) / (std::sqrt(std::numbers::pi) * x))
                << "n = " << n << ", x = " << x;
        }
    }
}

// h(x) >= c on [sqrt(n) - c, sqrt(n) + c] with c = 0.1.
TEST(ChiPdf, LowerBoundNearMode) {
    constexpr double c = 0.1;
    for (std::size_t n : {4u, 100u, 10000u}) {
        const double r = std::sqrt(static_cast<double>(n));
        for (int k = 0; k <= 1000; ++k) {
            const double x = r - c + 2.0 * c * k / 1000.0;
            ASSERT_GE(chi_pdf(n, x), c) << "n = " << n << ", x = " << x;
        }
    }
}

TEST(ChiPdf, IntegratesToOne) {
    for (std::size_t n : {2u, 10u, 100u}) {
        const double r = std::sqrt(static_cast<double>(n));
        const double total = trapezoid([n](double x) { return chi_pdf(n, x); }, 0.0, r + 15.0, 200000);
        EXPECT_NEAR(total, 1.0, 1e-6) << "n = " << n;
    }
    // n = 1 is the half-normal: finite at 0, trapezoid still converges.
    EXPECT_NEAR(trapezoid([](double x) { return chi_pdf(1, x); }, 0.0, 15.0, 200000), 1.0, 1e-6);
}

TEST(GaussianPdfCdf, Values) {
    const auto at0 = gaussian_pdf_cdf(0.0);
    EXPECT_NEAR(at0.pdf, 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-15);
    EXPECT_EQ(at0.cdf, 0.5);
    EXPECT_NEAR(gaussian_pdf_cdf(std::numbers::sqrt2).pdf, 0.1467626, 1e-7);
    EXPECT_NEAR(gaussian_pdf_cdf(2.0).cdf, 0.9772498680518208, 1e-12);
    EXPECT_NEAR(gaussian_pdf_cdf(-2.0).cdf, 1.0 - 0.9772498680518208, 1e-12);
    // Deep tail stays relative-accurate through erfc.
    EXPECT_NEAR(gaussian_pdf_cdf(-10.0).cdf / 7.61985302416047e-24, 1.0, 1e-10);
}

TEST(ProductPdf, StandardNormalsMatchBesselSeries) {
    for (double z : {0.5, 1.0, 2.0}) {
        const double oracle = bessel_k0_series(z) / std::numbers::pi;
        EXPECT_NEAR(oracle, std::cyl_bessel_k(0.0, z) / std::numbers::pi, 1e-13);
        EXPECT_NEAR(product_pdf(std_normal_joint, z), oracle, 1e-4) << "z = " << z;
    }
    EXPECT_NEAR(product_pdf(std_normal_joint, 1.0), 0.1340, 1e-4);
    EXPECT_NEAR(product_pdf(std_normal_joint, 2.0), 0.0362, 1e-4);
}

TEST(ProductPdf, SymmetricInZ) {
    for (double z : {0.3, 1.0, 2.5}) {
        EXPECT_NEAR(product_pdf(std_normal_joint, z), product_pdf(std_normal_joint, -z), 1e-10);
    }
}

TEST(ProductPdf, NonConvergenceCarriesBothValues) {
    QuadratureSpec quad;
    quad.max_doublings = 0;
    quad.panels = 1;
    quad.rel_tol = 0.0;
    quad.abs_tol = 0.0;
    try {
        product_pdf(std_normal_joint, 1.0, quad);
        FAIL() << "expected NumericalFailure";
    } catch (const NumericalFailure& e) {
        EXPECT_TRUE(std::isfinite(e.previous()));
        EXPECT_TRUE(std::isfinite(e.current()));
    }
}

// q(t) = int h(t/z) p(z) / |z| dz against two-stage sampling of r * z,
// r ~ chi_n and z ~ N(1, 0.5^2) independent.
TEST(ProductPdf, RadialDecompositionMatchesTwoStageSampling) {
    constexpr std::size_t n = 4;
    constexpr double mu = 1.0, sigma = 0.5, t = 2.0;
    const ChiDensity h(n);
    const JointDensity joint = [&](double r, double z) {
        return h(r) * gaussian_pdf_cdf((z - mu) / sigma).pdf / sigma;
    };
    const double quad = product_pdf(joint, t);

    auto s = make_stream(21, 0);
    std::vector<double> products(400000);
    for (auto& p : products) p = sample_chi(s, n) * sample_gaussian(s, mu, sigma);
    const auto est = density_at(products, t, 0.05, Sidedness::centered);
    EXPECT_NEAR(est.value, quad, 3.0 * est.std_error + 1e-3) << "quadrature " << quad;
}

TEST(DensityAt, StandardNormalAtZero) {
    auto s = make_stream(31, 0);
    std::vector<double> xs(1'000'000);
    for (auto& x : xs) x = s.normal();
    const auto est = density_at(xs, 0.0, 0.05, Sidedness::centered);
    EXPECT_NEAR(est.value, 0.3989, 3.0 * est.std_error);
    EXPECT_EQ(est.samples, xs.size());
    EXPECT_EQ(est.window, 0.05);
}

TEST(DensityAt, LeftWindowIsHalfOpen) {
    // Window (p - w, p]: the point itself counts, p - w does not.
    std::vector<double> xs(2000, 5.0);
    xs[0] = 1.0;
    const auto at = density_at(xs, 1.0, 0.5, Sidedness::left);
    EXPECT_NEAR(at.value, 1.0 / (2000 * 0.5), 1e-15);
    const auto edge = density_at(xs, 1.5, 0.5, Sidedness::left);
    EXPECT_EQ(edge.value, 0.0);
}

TEST(DensityAt, EmptyWindowIsZero) {
    std::vector<double> xs(5000, -3.0);
    const auto est = density_at(xs, 10.0, 0.1, Sidedness::centered);
    EXPECT_EQ(est.value, 0.0);
    EXPECT_EQ(est.std_error, 0.0);
}

TEST(DensityAt, DoublingSamplesShrinksStderr) {
    auto s = make_stream(32, 0);
    std::vector<double> xs(400000);
    for (auto& x : xs) x = s.normal();
    const std::span<const double> all(xs);
    const auto half = density_at(all.first(200000), 0.5, 0.1, Sidedness::centered);
    const auto full = density_at(all, 0.5, 0.1, Sidedness::centered);
    EXPECT_NEAR(half.std_error / full.std_error, std::numbers::sqrt2, 0.3 * std::numbers::sqrt2);
}

TEST(DensityAt, RejectsBadInput) {
    std::vector<double> few(999, 0.0);
    EXPECT_THROW(density_at(few, 0.0, 0.1, Sidedness::centered), InvalidParameter);
    std::vector<double> ok(1000, 0.0);
    EXPECT_THROW(density_at(ok, 0.0, 0.0, Sidedness::centered), InvalidParameter);
}

TEST(DefaultWindow, FollowsRule) {
    auto s = make_stream(33, 0);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = 3.0 * s.normal();
    EXPECT_NEAR(default_window(xs), 0.25 * 3.0 * std::pow(1e5, -0.2), 0.02 * 0.25 * 3.0 * std::pow(1e5, -0.2));
}

TEST(BatchMean, ConstantAndKnownSpread) {
    std::vector<double> c(1600, 2.0);
    const auto bm = batch_mean(c);
    EXPECT_EQ(bm.mean, 2.0);
    EXPECT_EQ(bm.std_error, 0.0);
    // Batch b holds the value b: mean 7.5, sd of batch means sqrt(340/15) / 4.
    std::vector<double> steps(1600);
    for (std::size_t i = 0; i < steps.size(); ++i) steps[i] = static_cast<double>(i / 100);
    const auto st = batch_mean(steps);
    EXPECT_DOUBLE_EQ(st.mean, 7.5);
    EXPECT_NEAR(st.std_error, std::sqrt(340.0 / 15.0) / 4.0, 1e-12);
    EXPECT_THROW(batch_mean(std::vector<double>(10, 1.0)), InvalidParameter);
}
