#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace specgsa {

/// Dense real symmetric d x d matrix stored as packed lower triangle,
/// row-major: (0,0), (1,0), (1,1), (2,0), ...
class SymMatrix {
  public:
    explicit SymMatrix(std::size_t dim);
    SymMatrix(std::size_t dim, std::vector<double> packed);

    static SymMatrix identity(std::size_t dim);
    static SymMatrix diagonal(std::span<const double> diag);
    static SymMatrix diagonal(std::initializer_list<double> diag);
    /// Reads the lower triangle of a row-major list of rows; the upper
    /// triangle is ignored.
    static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    static constexpr std::size_t packed_size(std::size_t dim) noexcept { return dim * (dim + 1) / 2; }
    static constexpr std::size_t packed_index(std::size_t i, std::size_t j) noexcept {
        return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
    }

    std::size_t dim() const noexcept { return dim_; }
    std::span<const double> packed() const noexcept { return packed_; }
    std::span<double> packed() noexcept { return packed_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return packed_[packed_index(i, j)]; }
    void set(std::size_t i, std::size_t j, double value) noexcept { packed_[packed_index(i, j)] = value; }

    bool all_finite() const noexcept;
    double frobenius_norm() const noexcept;
    Eigen::MatrixXd to_dense() const;

    SymMatrix& operator+=(const SymMatrix& other);
    SymMatrix& operator*=(double c) noexcept;

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

  private:
    std::size_t dim_;
    std::vector<double> packed_;
};

SymMatrix operator+(SymMatrix lhs, const SymMatrix& rhs);
SymMatrix operator*(double c, SymMatrix m);

} // namespace specgsa
