#include "specgsa/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "specgsa/errors.hpp"

namespace specgsa {

double log_gamma(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw InvalidParameter("log_gamma: argument must be positive and finite, got " + std::to_string(z));
    }
    return std::lgamma(z);
}

ChiDensity::ChiDensity(std::size_t n) : n_(n) {
    if (n == 0) {
        throw InvalidParameter("chi density: degrees of freedom must be at least 1");
    }
    const double half = 0.5 * static_cast<double>(n);
    log_norm_ = -(half - 1.0) * std::numbers::ln2 - log_gamma(half);
}

double ChiDensity::log_density(double x) const noexcept {
    if (x < 0.0 || (x == 0.0 && n_ >= 2)) {
        return -std::numeric_limits<double>::infinity();
    }
    if (n_ == 1) {
        return log_norm_ - 0.5 * x * x;
    }
    return log_norm_ + static_cast<double>(n_ - 1) * std::log(x) - 0.5 * x * x;
}

double ChiDensity::operator()(double x) const noexcept {
    if (!std::isfinite(x)) {
        return 0.0;
    }
    return std::exp(log_density(x));
}

double chi_pdf(std::size_t n, double x) { return ChiDensity(n)(x); }

GaussianPdfCdf gaussian_pdf_cdf(double x) {
    constexpr double inv_sqrt_2pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
    return {inv_sqrt_2pi * std::exp(-0.5 * x * x), 0.5 * std::erfc(-x / std::numbers::sqrt2)};
}

namespace {

double composite_gk15(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
    if (!(b > a)) {
        return 0.0;
    }
    const double h = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
        const double lo = a + h * static_cast<double>(k);
        const double hi = (k + 1 == panels) ? b : lo + h;
        sum += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 0);
    }
    return sum;
}

} // namespace

double product_pdf(const JointDensity& joint_density, double z, const QuadratureSpec& quad) {
    if (!(quad.upper > quad.lower) || !(quad.exclusion >= 0.0) || quad.panels == 0) {
        throw InvalidParameter("product_pdf: invalid quadrature settings");
    }
    const std::function<double(double)> integrand = [&](double x) {
        const double ax = std::abs(x);
        if (ax == 0.0) {
            return 0.0;
        }
        return joint_density(x, z / x) / ax;
    };
    // Pieces of [lower, upper] outside (-exclusion, exclusion).
    const double neg_hi = std::min(quad.upper, -quad.exclusion);
    const double pos_lo = std::max(quad.lower, quad.exclusion);

    auto integrate = [&](std::size_t panels) {
        double total = 0.0;
        if (quad.lower < neg_hi) {
            total += composite_gk15(integrand, quad.lower, neg_hi, panels);
        }
        if (pos_lo < quad.upper) {
            total += composite_gk15(integrand, pos_lo, quad.upper, panels);
        }
        return total;
    };

    std::size_t panels = quad.panels;
    double previous = integrate(panels);
    for (std::size_t level = 0; level < quad.max_doublings; ++level) {
        panels *= 2;
        const double current = integrate(panels);
        if (std::abs(current - previous) <= std::max(quad.abs_tol, quad.rel_tol * std::abs(current))) {
            return std::max(current, 0.0);
        }
        previous = current;
    }
    const double last = integrate(panels * 2);
    throw NumericalFailure("product_pdf: quadrature did not converge at z = " + std::to_string(z), previous, last);
}

BatchMean batch_mean(std::span<const double> contributions, std::size_t batches) {
    const std::size_t m = contributions.size();
    if (batches < 2 || m < batches) {
        throw InvalidParameter("batch_mean: need at least " + std::to_string(batches) + " samples");
    }
    std::vector<double> means(batches, 0.0);
    double total = 0.0;
    for (std::size_t b = 0; b < batches; ++b) {
        const std::size_t begin = b * m / batches;
        const std::size_t end = (b + 1) * m / batches;
        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            sum += contributions[i];
        }
        total += sum;
        means[b] = sum / static_cast<double>(end - begin);
    }
    const double mean = total / static_cast<double>(m);
    double ss = 0.0;
    for (double bm : means) {
        ss += (bm - mean) * (bm - mean);
    }
    const double nb = static_cast<double>(batches);
    return {mean, std::sqrt(ss / (nb * (nb - 1.0)))};
}

DensityEstimate density_at(std::span<const double> samples, double point, double window, Sidedness sidedness) {
    if (samples.size() < kMinDensitySamples) {
        throw InvalidParameter("density_at: need at least " + std::to_string(kMinDensitySamples) + " samples, got " +
                               std::to_string(samples.size()));
    }
    if (!(window > 0.0)) {
        throw InvalidParameter("density_at: window must be positive");
    }
    double lo = point - window;
    double hi = point;
    if (sidedness == Sidedness::centered) {
        lo = point - 0.5 * window;
        hi = point + 0.5 * window;
    }
    std::vector<double> hits(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double s = samples[i];
        const bool in = sidedness == Sidedness::left ? (s > lo && s <= hi) : (s >= lo && s < hi);
        hits[i] = in ? 1.0 / window : 0.0;
    }
    const BatchMean bm = batch_mean(hits);
    return {point, bm.mean, bm.std_error, samples.size(), window, sidedness};
}

double default_window(std::span<const double> samples) {
    if (samples.size() < 2) {
        throw InvalidParameter("default_window: need at least two samples");
    }
    double mean = 0.0;
    for (double s : samples) {
        mean += s;
    }
    mean /= static_cast<double>(samples.size());
    double ss = 0.0;
    for (double s : samples) {
        ss += (s - mean) * (s - mean);
    }
    const double sigma = std::sqrt(ss / static_cast<double>(samples.size() - 1));
    return 0.25 * sigma * std::pow(static_cast<double>(samples.size()), -0.2);
}

} // namespace specgsa
