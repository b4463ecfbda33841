#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace specgsa {

/// ln Gamma(z) for z > 0.
double log_gamma(double z);

/// Density of the chi distribution with n degrees of freedom,
/// h(x) = x^(n-1) exp(-x^2/2) / (2^(n/2-1) Gamma(n/2)) for x >= 0,
/// evaluated in log space. Zero for x < 0, and at x = 0 when n >= 2.
double chi_pdf(std::size_t n, double x);

/// chi_pdf with the normalizing constant hoisted out, for inner loops.
class ChiDensity {
  public:
    explicit ChiDensity(std::size_t n);

    std::size_t degrees() const noexcept { return n_; }
    double operator()(double x) const noexcept;
    double log_density(double x) const noexcept;

  private:
    std::size_t n_;
    double log_norm_;
};

struct GaussianPdfCdf {
    double pdf;
    double cdf;
};

GaussianPdfCdf gaussian_pdf_cdf(double x);

/// Integration domain for product_pdf: the first variable ranges over
/// [lower, upper] with (-exclusion, exclusion) removed. Each side starts with
/// `panels` Gauss-Kronrod-15 panels and is refined by doubling until two
/// successive totals agree to within max(abs_tol, rel_tol * |total|).
struct QuadratureSpec {
    double lower = -12.0;
    double upper = 12.0;
    double exclusion = 1e-8;
    std::size_t panels = 32;
    std::size_t max_doublings = 10;
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
};

using JointDensity = std::function<double(double, double)>;

/// Density of z = x*y at z, where (x, y) has joint density f:
/// g(z) = integral f(x, z/x) / |x| dx.
/// Throws NumericalFailure if refinement does not converge.
double product_pdf(const JointDensity& joint_density, double z, const QuadratureSpec& quad = {});

enum class Sidedness { left, centered };

struct DensityEstimate {
    double point = 0.0;
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    double window = 0.0;
    Sidedness sidedness = Sidedness::centered;
};

inline constexpr std::size_t kBatchCount = 16;
inline constexpr std::size_t kMinDensitySamples = 1000;

/// Window-count density estimate. Left windows cover (point - w, point],
/// centered windows [point - w/2, point + w/2).
DensityEstimate density_at(std::span<const double> samples, double point, double window, Sidedness sidedness);

/// 0.25 * sigma_hat * m^(-1/5).
double default_window(std::span<const double> samples);

struct BatchMean {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Mean of per-sample contributions with the standard error of 16
/// contiguous batch means.
BatchMean batch_mean(std::span<const double> contributions, std::size_t batches = kBatchCount);

} // namespace specgsa
