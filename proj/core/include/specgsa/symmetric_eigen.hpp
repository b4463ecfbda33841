#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "specgsa/sym_matrix.hpp"

namespace specgsa {

/// Algebraically largest eigenvalue with a unit eigenvector.
struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;
    /// lambda_1 - lambda_2; +infinity when dim == 1.
    double gap = 0.0;
};

/// sum_i x_i * matrices[i]. Throws InvalidParameter on length or dim mismatch.
SymMatrix assemble(std::span<const double> x, std::span<const SymMatrix> matrices);

/// Top eigenpair via Householder tridiagonalization and implicit-shift QR.
EigenPair lambda_max(const SymMatrix& m);

/// Top eigenvalue only; skips eigenvector accumulation.
double lambda_max_value(const SymMatrix& m);

/// A family A(1..n) of d x d symmetric matrices, stored column-per-matrix in
/// a (d(d+1)/2) x n block so the pencil sum_i x_i A(i) is one matrix-vector
/// product.
class MatrixFamily {
  public:
    MatrixFamily() = default;
    explicit MatrixFamily(std::span<const SymMatrix> matrices);
    MatrixFamily(std::size_t n, std::size_t d, std::vector<double> block);

    std::size_t size() const noexcept { return n_; }
    std::size_t dim() const noexcept { return d_; }
    SymMatrix matrix(std::size_t i) const;
    std::span<const double> block() const noexcept { return block_; }

    SymMatrix assemble(std::span<const double> x) const;
    /// W_v = (v^T A(1) v, ..., v^T A(n) v). No normalization check on v.
    std::vector<double> quadratic_forms(std::span<const double> v) const;

    friend bool operator==(const MatrixFamily&, const MatrixFamily&) = default;

  private:
    Eigen::Map<const Eigen::MatrixXd> as_matrix() const;

    std::size_t n_ = 0;
    std::size_t d_ = 0;
    std::vector<double> block_;
};

// Snapshot format: magic "SGSA1", n and d as u64 little-endian, then n packed
// lower-triangular matrices as f64 little-endian, then optionally one trailing
// f64 threshold.
inline constexpr std::string_view kSnapshotMagic = "SGSA1";

struct Snapshot {
    MatrixFamily family;
    std::optional<double> threshold;
};

void write_snapshot(std::ostream& out, const MatrixFamily& family, std::optional<double> threshold = std::nullopt);
Snapshot read_snapshot(std::istream& in);

} // namespace specgsa
