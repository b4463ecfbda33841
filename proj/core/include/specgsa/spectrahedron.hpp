#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "specgsa/rand_core.hpp"
#include "specgsa/symmetric_eigen.hpp"

namespace specgsa {

/**
 * T = { x in R^n : sum_i x_i A(i) <= t I }.
 *
 * The body is closed (membership uses <=) and, since t > 0, contains the
 * origin in its interior. Immutable once built.
 */
class Spectrahedron {
  public:
    /// Threshold defaults to 2 sqrt(n d).
    explicit Spectrahedron(MatrixFamily family);
    Spectrahedron(MatrixFamily family, double threshold);

    std::size_t n() const noexcept { return family_.size(); }
    std::size_t d() const noexcept { return family_.dim(); }
    double threshold() const noexcept { return threshold_; }
    const MatrixFamily& family() const noexcept { return family_; }

    static double default_threshold(std::size_t n, std::size_t d) noexcept;

  private:
    void validate() const;

    MatrixFamily family_;
    double threshold_;
};

/// n i.i.d. GOE(d) matrices drawn in order from `stream`.
Spectrahedron random_instance(RngStream& stream, std::size_t n, std::size_t d);

/// The instance a seed denotes: random_instance on make_stream(seed, kInstanceStreamId).
Spectrahedron instance_from_seed(std::uint64_t seed, std::size_t n, std::size_t d);

/// f(x) = lambda_max(sum_i x_i A(i)).
double f_value(const Spectrahedron& s, std::span<const double> x);

/// Top eigenpair of the pencil at x.
EigenPair pencil_top(const Spectrahedron& s, std::span<const double> x);

bool contains(const Spectrahedron& s, std::span<const double> x);

/// W_v = (v^T A(i) v)_i. Requires | ||v|| - 1 | <= 1e-8.
std::vector<double> w_vector(const Spectrahedron& s, std::span<const double> v);

/// Relative gap below which the top eigenvalue counts as repeated.
inline constexpr double kDegenerateGapTol = 1e-8;

/// True when the pencil's top eigenvalue is numerically simple.
bool top_is_simple(const EigenPair& top, double frobenius_norm) noexcept;

/// Gradient of f at x, i.e. W_v for the top eigenvector v.
/// Throws DegenerateGradient if the top eigenvalue is not simple.
std::vector<double> grad_f(const Spectrahedron& s, std::span<const double> x);

/// Greedy maximal eps-separated subset of the unit sphere S^(d-1).
/// Pairwise distances exceed eps, so the size is at most (1 + 2/eps)^d.
/// Throws CapacityError for d > kMaxNetDim.
inline constexpr std::size_t kMaxNetDim = 6;
std::vector<std::vector<double>> epsilon_net(std::size_t d, double eps);

struct NetCoverage {
    std::size_t probes = 0;
    std::size_t covered = 0;
    double max_distance = 0.0;
};

/// Distance from uniform probes to their nearest net point.
NetCoverage probe_net_coverage(std::span<const std::vector<double>> net, double eps, RngStream& stream,
                               std::size_t probes);

enum class Verdict { good, not_good, inconclusive };
std::string_view to_string(Verdict v) noexcept;

struct GoodnessReport {
    double min_norm = 0.0;
    double max_norm = 0.0;
    std::size_t probes = 0;
    std::size_t optimizer_runs = 0;
    Verdict verdict = Verdict::inconclusive;
};

/// Empirical check of sqrt(n)/2 <= ||W_v|| <= 2 sqrt(n) over random sphere
/// probes plus `optimizer_restarts` minimize and maximize runs of
/// sphere_optimize_wnorm. A `good` verdict is evidence, not a certificate.
GoodnessReport goodness_probe(const Spectrahedron& s, RngStream& stream, std::size_t probes,
                              std::size_t optimizer_restarts);

enum class OptimizeDirection { minimize, maximize };

struct SphereOptimum {
    std::vector<double> v;
    double norm = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
};

/// Riemannian gradient method for ||W_v||^2 on S^(d-1) with step-halving
/// line search. The objective sequence is monotone in `direction`.
SphereOptimum sphere_optimize_wnorm(const Spectrahedron& s, std::span<const double> v0, OptimizeDirection direction,
                                    std::size_t max_iters = 500, double tol = 1e-10);

struct ShellWitness {
    std::vector<double> y;
    double y_norm = 0.0;
    bool valid = false;
};

/// For x in the inner shell f(x) in [t - delta sqrt(n), t], builds
/// y = 2 delta sqrt(n) W_v / ||W_v||^2 with v the top eigenvector at x.
/// valid means x + y lies outside T and ||y|| <= 4 delta.
ShellWitness inner_shell_witness(const Spectrahedron& s, std::span<const double> x, double delta);

/// Snapshot of the family followed by the threshold.
void save_instance(const std::filesystem::path& path, const Spectrahedron& s);
Spectrahedron load_instance(const std::filesystem::path& path);

} // namespace specgsa
