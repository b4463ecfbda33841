#include "specgsa/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "specgsa/errors.hpp"

namespace specgsa {

SymMatrix::SymMatrix(std::size_t dim) : dim_(dim), packed_(packed_size(dim), 0.0) {
    if (dim == 0) {
        throw InvalidParameter("SymMatrix: dimension must be at least 1");
    }
}

SymMatrix::SymMatrix(std::size_t dim, std::vector<double> packed) : dim_(dim), packed_(std::move(packed)) {
    if (dim == 0) {
        throw InvalidParameter("SymMatrix: dimension must be at least 1");
    }
    if (packed_.size() != packed_size(dim)) {
        throw InvalidParameter("SymMatrix: packed storage has " + std::to_string(packed_.size()) +
                               " entries, expected " + std::to_string(packed_size(dim)));
    }
}

SymMatrix SymMatrix::identity(std::size_t dim) {
    SymMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m.set(i, i, 1.0);
    }
    return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
    SymMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m.set(i, i, diag[i]);
    }
    return m;
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> diag) {
    return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    SymMatrix m(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != rows.size()) {
            throw InvalidParameter("SymMatrix::from_rows: matrix must be square");
        }
        std::size_t j = 0;
        for (double v : row) {
            if (j <= i) {
                m.set(i, j, v);
            }
            ++j;
        }
        ++i;
    }
    return m;
}

bool SymMatrix::all_finite() const noexcept {
    for (double v : packed_) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

double SymMatrix::frobenius_norm() const noexcept {
    double sum = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = (*this)(i, j);
            sum += (i == j ? 1.0 : 2.0) * v * v;
        }
    }
    return std::sqrt(sum);
}

Eigen::MatrixXd SymMatrix::to_dense() const {
    Eigen::MatrixXd dense(dim_, dim_);
    std::size_t k = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j <= i; ++j, ++k) {
            dense(i, j) = packed_[k];
            dense(j, i) = packed_[k];
        }
    }
    return dense;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
    if (other.dim_ != dim_) {
        throw InvalidParameter("SymMatrix: dimension mismatch in addition");
    }
    for (std::size_t k = 0; k < packed_.size(); ++k) {
        packed_[k] += other.packed_[k];
    }
    return *this;
}

SymMatrix& SymMatrix::operator*=(double c) noexcept {
    for (double& v : packed_) {
        v *= c;
    }
    return *this;
}

SymMatrix operator+(SymMatrix lhs, const SymMatrix& rhs) {
    lhs += rhs;
    return lhs;
}

SymMatrix operator*(double c, SymMatrix m) {
    m *= c;
    return m;
}

SymMatrix assemble(std::span<const double> x, std::span<const SymMatrix> matrices) {
    if (x.size() != matrices.size()) {
        throw InvalidParameter("assemble: coefficient vector has length " + std::to_string(x.size()) + " but " +
                               std::to_string(matrices.size()) + " matrices were given");
    }
    if (matrices.empty()) {
        throw InvalidParameter("assemble: empty matrix family");
    }
    const std::size_t d = matrices.front().dim();
    SymMatrix out(d);
    auto acc = out.packed();
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        if (matrices[i].dim() != d) {
            throw InvalidParameter("assemble: matrix " + std::to_string(i) + " has dim " +
                                   std::to_string(matrices[i].dim()) + ", expected " + std::to_string(d));
        }
        const auto src = matrices[i].packed();
        for (std::size_t k = 0; k < acc.size(); ++k) {
            acc[k] += x[i] * src[k];
        }
    }
    return out;
}

namespace {

void require_finite(const SymMatrix& m) {
    if (!m.all_finite()) {
        throw InvalidParameter("lambda_max: matrix has non-finite entries");
    }
}

} // namespace

EigenPair lambda_max(const SymMatrix& m) {
    require_finite(m);
    const std::size_t d = m.dim();
    EigenPair out;
    if (d == 1) {
        out.value = m(0, 0);
        out.vector = {1.0};
        out.gap = std::numeric_limits<double>::infinity();
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.to_dense(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("lambda_max: QR iteration did not converge", 0.0, 0.0);
    }
    const auto& values = solver.eigenvalues();
    out.value = values(d - 1);
    out.gap = values(d - 1) - values(d - 2);
    const auto top = solver.eigenvectors().col(d - 1);
    out.vector.assign(top.data(), top.data() + d);
    return out;
}

double lambda_max_value(const SymMatrix& m) {
    require_finite(m);
    if (m.dim() == 1) {
        return m(0, 0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.to_dense(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("lambda_max_value: QR iteration did not converge", 0.0, 0.0);
    }
    return solver.eigenvalues()(m.dim() - 1);
}

MatrixFamily::MatrixFamily(std::span<const SymMatrix> matrices) {
    if (matrices.empty()) {
        throw InvalidParameter("MatrixFamily: need at least one matrix");
    }
    n_ = matrices.size();
    d_ = matrices.front().dim();
    const std::size_t p = SymMatrix::packed_size(d_);
    block_.resize(p * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (matrices[i].dim() != d_) {
            throw InvalidParameter("MatrixFamily: matrix " + std::to_string(i) + " has dim " +
                                   std::to_string(matrices[i].dim()) + ", expected " + std::to_string(d_));
        }
        const auto src = matrices[i].packed();
        std::copy(src.begin(), src.end(), block_.begin() + static_cast<std::ptrdiff_t>(i * p));
    }
}

MatrixFamily::MatrixFamily(std::size_t n, std::size_t d, std::vector<double> block)
    : n_(n), d_(d), block_(std::move(block)) {
    if (n == 0 || d == 0) {
        throw InvalidParameter("MatrixFamily: n and d must be at least 1");
    }
    if (block_.size() != n * SymMatrix::packed_size(d)) {
        throw InvalidParameter("MatrixFamily: block size does not match n * d(d+1)/2");
    }
}

Eigen::Map<const Eigen::MatrixXd> MatrixFamily::as_matrix() const {
    return {block_.data(), static_cast<Eigen::Index>(SymMatrix::packed_size(d_)), static_cast<Eigen::Index>(n_)};
}

SymMatrix MatrixFamily::matrix(std::size_t i) const {
    if (i >= n_) {
        throw InvalidParameter("MatrixFamily::matrix: index out of range");
    }
    const std::size_t p = SymMatrix::packed_size(d_);
    const auto first = block_.begin() + static_cast<std::ptrdiff_t>(i * p);
    return SymMatrix(d_, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(p)));
}

SymMatrix MatrixFamily::assemble(std::span<const double> x) const {
    if (x.size() != n_) {
        throw InvalidParameter("MatrixFamily::assemble: coefficient vector has length " + std::to_string(x.size()) +
                               ", expected " + std::to_string(n_));
    }
    SymMatrix out(d_);
    Eigen::Map<Eigen::VectorXd> acc(out.packed().data(), static_cast<Eigen::Index>(out.packed().size()));
    Eigen::Map<const Eigen::VectorXd> coeffs(x.data(), static_cast<Eigen::Index>(n_));
    acc.noalias() = as_matrix() * coeffs;
    return out;
}

std::vector<double> MatrixFamily::quadratic_forms(std::span<const double> v) const {
    if (v.size() != d_) {
        throw InvalidParameter("MatrixFamily::quadratic_forms: vector has length " + std::to_string(v.size()) +
                               ", expected " + std::to_string(d_));
    }
    // v^T A v = sum_i A_ii v_i^2 + 2 sum_{i>j} A_ij v_i v_j, packed the same way as A.
    Eigen::VectorXd outer(static_cast<Eigen::Index>(SymMatrix::packed_size(d_)));
    Eigen::Index k = 0;
    for (std::size_t i = 0; i < d_; ++i) {
        for (std::size_t j = 0; j <= i; ++j, ++k) {
            outer(k) = (i == j ? 1.0 : 2.0) * v[i] * v[j];
        }
    }
    std::vector<double> w(n_);
    Eigen::Map<Eigen::VectorXd> out(w.data(), static_cast<Eigen::Index>(n_));
    out.noalias() = as_matrix().transpose() * outer;
    return w;
}

} // namespace specgsa
