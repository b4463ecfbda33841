#include "specgsa/spectrahedron.hpp"

#include <cmath>
#include <fstream>
#include <string>

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

void require_length(const Spectrahedron& s, std::span<const double> x, const char* op) {
    if (x.size() != s.n()) {
        throw InvalidParameter(std::string(op) + ": point has length " + std::to_string(x.size()) + ", expected n = " +
                               std::to_string(s.n()));
    }
}

} // namespace

Spectrahedron::Spectrahedron(MatrixFamily family)
    : family_(std::move(family)), threshold_(default_threshold(family_.size(), family_.dim())) {
    validate();
}

Spectrahedron::Spectrahedron(MatrixFamily family, double threshold)
    : family_(std::move(family)), threshold_(threshold) {
    validate();
}

void Spectrahedron::validate() const {
    if (family_.size() == 0) {
        throw InvalidParameter("Spectrahedron: empty matrix family");
    }
    if (!(threshold_ > 0.0) || !std::isfinite(threshold_)) {
        throw InvalidParameter("Spectrahedron: threshold must be positive and finite");
    }
}

double Spectrahedron::default_threshold(std::size_t n, std::size_t d) noexcept {
    return 2.0 * std::sqrt(static_cast<double>(n) * static_cast<double>(d));
}

Spectrahedron random_instance(RngStream& stream, std::size_t n, std::size_t d) {
    if (n == 0 || d == 0) {
        throw InvalidParameter("random_instance: n and d must be at least 1");
    }
    std::vector<SymMatrix> matrices;
    matrices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        matrices.push_back(sample_goe(stream, d));
    }
    return Spectrahedron(MatrixFamily(matrices));
}

Spectrahedron instance_from_seed(std::uint64_t seed, std::size_t n, std::size_t d) {
    auto stream = make_stream(seed, kInstanceStreamId);
    return random_instance(stream, n, d);
}

double f_value(const Spectrahedron& s, std::span<const double> x) {
    require_length(s, x, "f_value");
    return lambda_max_value(s.family().assemble(x));
}

EigenPair pencil_top(const Spectrahedron& s, std::span<const double> x) {
    require_length(s, x, "pencil_top");
    return lambda_max(s.family().assemble(x));
}

bool contains(const Spectrahedron& s, std::span<const double> x) { return f_value(s, x) <= s.threshold(); }

std::vector<double> w_vector(const Spectrahedron& s, std::span<const double> v) {
    if (v.size() != s.d()) {
        throw InvalidParameter("w_vector: v has length " + std::to_string(v.size()) + ", expected d = " +
                               std::to_string(s.d()));
    }
    const double norm = std::sqrt(dot(v, v));
    if (!(std::abs(norm - 1.0) <= 1e-8)) {
        throw InvalidParameter("w_vector: v must be a unit vector, |v| = " + std::to_string(norm));
    }
    return s.family().quadratic_forms(v);
}

bool top_is_simple(const EigenPair& top, double frobenius_norm) noexcept {
    return top.gap > kDegenerateGapTol * frobenius_norm;
}

std::vector<double> grad_f(const Spectrahedron& s, std::span<const double> x) {
    require_length(s, x, "grad_f");
    const SymMatrix pencil = s.family().assemble(x);
    const EigenPair top = lambda_max(pencil);
    if (!top_is_simple(top, pencil.frobenius_norm())) {
        throw DegenerateGradient("grad_f: top eigenvalue is numerically repeated (gap " + std::to_string(top.gap) +
                                 ")");
    }
    return s.family().quadratic_forms(top.vector);
}

ShellWitness inner_shell_witness(const Spectrahedron& s, std::span<const double> x, double delta) {
    require_length(s, x, "inner_shell_witness");
    if (!(delta > 0.0)) {
        throw InvalidParameter("inner_shell_witness: delta must be positive");
    }
    const double t = s.threshold();
    const double sqrt_n = std::sqrt(static_cast<double>(s.n()));
    const SymMatrix pencil = s.family().assemble(x);
    const EigenPair top = lambda_max(pencil);
    if (!(top.value >= t - delta * sqrt_n && top.value <= t)) {
        throw InvalidParameter("inner_shell_witness: f(x) = " + std::to_string(top.value) +
                               " is outside the inner shell [" + std::to_string(t - delta * sqrt_n) + ", " +
                               std::to_string(t) + "]");
    }
    // Any unit top eigenvector works: <x, W_v> = f(x) and <z, W_v> <= f(z) for all z.
    const std::vector<double> w = s.family().quadratic_forms(top.vector);
    const double w2 = dot(w, w);
    ShellWitness out;
    if (w2 == 0.0) {
        return out;
    }
    const double scale = 2.0 * delta * sqrt_n / w2;
    out.y.resize(w.size());
    std::vector<double> moved(x.begin(), x.end());
    for (std::size_t i = 0; i < w.size(); ++i) {
        out.y[i] = scale * w[i];
        moved[i] += out.y[i];
    }
    out.y_norm = std::sqrt(dot(out.y, out.y));
    out.valid = !contains(s, moved) && out.y_norm <= 4.0 * delta;
    return out;
}

void save_instance(const std::filesystem::path& path, const Spectrahedron& s) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_snapshot(out, s.family(), s.threshold());
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

Spectrahedron load_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    Snapshot snap = read_snapshot(in);
    if (snap.threshold) {
        return Spectrahedron(std::move(snap.family), *snap.threshold);
    }
    return Spectrahedron(std::move(snap.family));
}

} // namespace specgsa
