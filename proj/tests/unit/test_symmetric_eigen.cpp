#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "specgsa/errors.hpp"
#include "specgsa/rand_core.hpp"
#include "specgsa/symmetric_eigen.hpp"

using namespace specgsa;

namespace {

using Dense = std::vector<std::vector<double>>;

Dense dense_of(const SymMatrix& m) {
    Dense a(m.dim(), std::vector<double>(m.dim()));
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) a[i][j] = m(i, j);
    return a;
}

// Cyclic Jacobi rotations: an eigenvalue oracle sharing no code with Eigen.
std::vector<double> jacobi_eigenvalues(Dense a) {
    const std::size_t d = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < d; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(d);
    for (std::size_t i = 0; i < d; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

double norm(std::span<const double> v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

std::vector<double> mat_vec(const SymMatrix& m, std::span<const double> v) {
    std::vector<double> out(m.dim(), 0.0);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

} // namespace

TEST(SymMatrix, PackedLayoutAndSymmetry) {
    const auto m = SymMatrix::from_rows({{1, 2, 4}, {2, 3, 5}, {4, 5, 6}});
    EXPECT_EQ(m.dim(), 3u);
    EXPECT_EQ(SymMatrix::packed_size(3), 6u);
    const std::vector<double> expected{1, 2, 3, 4, 5, 6};
    EXPECT_TRUE(std::equal(m.packed().begin(), m.packed().end(), expected.begin()));
    EXPECT_EQ(m(0, 2), m(2, 0));
    EXPECT_DOUBLE_EQ(m.frobenius_norm(), std::sqrt(1 + 9 + 36 + 2 * (4 + 16 + 25)));
}

TEST(SymMatrix, RejectsBadShapes) {
    EXPECT_THROW(SymMatrix(0), InvalidParameter);
    EXPECT_THROW(SymMatrix(3, std::vector<double>(5)), InvalidParameter);
    EXPECT_THROW(SymMatrix(2) += SymMatrix(3), InvalidParameter);
}

TEST(Assemble, ExampleFromDefinition) {
    const std::vector<SymMatrix> mats{SymMatrix::identity(2), SymMatrix::from_rows({{0, 1}, {1, 0}})};
    const std::vector<double> x{2.0, -1.0};
    EXPECT_EQ(assemble(x, mats), SymMatrix::from_rows({{2, -1}, {-1, 2}}));
}

TEST(Assemble, ZeroCoefficientsGiveZero) {
    auto s = make_stream(1, 0);
    std::vector<SymMatrix> mats;
    for (int i = 0; i < 5; ++i) mats.push_back(sample_goe(s, 4));
    const std::vector<double> x(5, 0.0);
    EXPECT_EQ(assemble(x, mats), SymMatrix(4));
}

TEST(Assemble, MatchesTripleLoopAndFamily) {
    auto s = make_stream(2, 0);
    constexpr std::size_t n = 7, d = 5;
    std::vector<SymMatrix> mats;
    for (std::size_t i = 0; i < n; ++i) mats.push_back(sample_goe(s, d));
    const auto x = sample_gaussian_vector(s, n);
    const SymMatrix got = assemble(x, mats);
    const MatrixFamily family(mats);
    const SymMatrix via_family = family.assemble(x);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double want = 0.0;
            for (std::size_t k = 0; k < n; ++k) want += x[k] * mats[k](i, j);
            EXPECT_NEAR(got(i, j), want, 1e-12);
            EXPECT_NEAR(via_family(i, j), want, 1e-12);
        }
    }
}

TEST(Assemble, LengthMismatchThrows) {
    const std::vector<SymMatrix> mats{SymMatrix::identity(2), SymMatrix::identity(2)};
    const std::vector<double> x{1.0};
    EXPECT_THROW(assemble(x, mats), InvalidParameter);
    const std::vector<SymMatrix> mixed{SymMatrix::identity(2), SymMatrix::identity(3)};
    const std::vector<double> x2{1.0, 1.0};
    EXPECT_THROW(assemble(x2, mixed), InvalidParameter);
}

TEST(LambdaMax, Diagonal) {
    const auto top = lambda_max(SymMatrix::diagonal({3.0, 1.0, 2.0}));
    EXPECT_NEAR(top.value, 3.0, 1e-14);
    EXPECT_NEAR(std::abs(top.vector[0]), 1.0, 1e-14);
    EXPECT_NEAR(top.gap, 1.0, 1e-14);
}

TEST(LambdaMax, OffDiagonalPair) {
    const auto top = lambda_max(SymMatrix::from_rows({{0, 1}, {1, 0}}));
    EXPECT_NEAR(top.value, 1.0, 1e-14);
    EXPECT_NEAR(std::abs(top.vector[0]), 1.0 / std::numbers::sqrt2, 1e-12);
    EXPECT_NEAR(top.vector[0], top.vector[1], 1e-12);
    EXPECT_NEAR(top.gap, 2.0, 1e-14);
}

TEST(LambdaMax, ScalarMatrix) {
    const auto top = lambda_max(SymMatrix::diagonal({-4.0}));
    EXPECT_EQ(top.value, -4.0);
    EXPECT_TRUE(std::isinf(top.gap));
}

TEST(LambdaMax, MatchesJacobiOracle) {
    auto s = make_stream(3, 0);
    for (std::size_t d : {2u, 3u, 6u, 11u}) {
        for (int trial = 0; trial < 10; ++trial) {
            const SymMatrix a = sample_goe(s, d);
            const auto ev = jacobi_eigenvalues(dense_of(a));
            const auto top = lambda_max(a);
            EXPECT_NEAR(top.value, ev.back(), 1e-10 * (1.0 + std::abs(ev.back())));
            EXPECT_NEAR(lambda_max_value(a), ev.back(), 1e-10 * (1.0 + std::abs(ev.back())));
            EXPECT_NEAR(top.gap, ev.back() - ev[d - 2], 1e-9);
            // Residual ||A v - lambda v|| and unit norm.
            const auto av = mat_vec(a, top.vector);
            double res = 0.0;
            for (std::size_t i = 0; i < d; ++i) res += std::pow(av[i] - top.value * top.vector[i], 2);
            EXPECT_LT(std::sqrt(res), 1e-10 * (1.0 + a.frobenius_norm()));
            EXPECT_NEAR(norm(top.vector), 1.0, 1e-12);
        }
    }
}

TEST(LambdaMax, PositiveHomogeneityAndShift) {
    auto s = make_stream(4, 0);
    const SymMatrix a = sample_goe(s, 8);
    const double base = lambda_max_value(a);
    EXPECT_NEAR(lambda_max_value(3.5 * a), 3.5 * base, 1e-11);
    EXPECT_NEAR(lambda_max_value(a + 2.0 * SymMatrix::identity(8)), base + 2.0, 1e-11);
    // Negative scaling picks the other end of the spectrum.
    const auto ev = jacobi_eigenvalues(dense_of(a));
    EXPECT_NEAR(lambda_max_value(-1.0 * a), -ev.front(), 1e-10);
}

TEST(LambdaMax, DominatesRayleighQuotients) {
    auto s = make_stream(5, 0);
    const SymMatrix a = sample_goe(s, 10);
    const double top = lambda_max_value(a);
    for (int k = 0; k < 200; ++k) {
        const auto v = sample_sphere(s, 10);
        const auto av = mat_vec(a, v);
        EXPECT_LE(std::inner_product(v.begin(), v.end(), av.begin(), 0.0), top + 1e-12);
    }
}

TEST(LambdaMax, NonFiniteThrows) {
    auto m = SymMatrix::identity(3);
    m.set(1, 0, std::numeric_limits<double>::quiet_NaN());
    EXPECT_THROW(lambda_max(m), InvalidParameter);
    m.set(1, 0, std::numeric_limits<double>::infinity());
    EXPECT_THROW(lambda_max_value(m), InvalidParameter);
}

// Semicircle edge: E lambda_max(GOE(64)) = 2 sqrt(64) - O(d^(-1/6)) ~ 15.4.
TEST(LambdaMax, GoeEdgeMean) {
    auto s = make_stream(6, 0);
    constexpr int trials = 2000;
    double sum = 0.0;
    for (int k = 0; k < trials; ++k) sum += lambda_max_value(sample_goe(s, 64));
    const double mean = sum / trials;
    EXPECT_GE(mean, 15.2);
    EXPECT_LE(mean, 15.6);
}

TEST(MatrixFamily, QuadraticFormsMatchDirectEvaluation) {
    auto s = make_stream(7, 0);
    std::vector<SymMatrix> mats;
    for (int i = 0; i < 6; ++i) mats.push_back(sample_goe(s, 4));
    const MatrixFamily family(mats);
    EXPECT_EQ(family.size(), 6u);
    EXPECT_EQ(family.dim(), 4u);
    const auto v = sample_sphere(s, 4);
    const auto w = family.quadratic_forms(v);
    for (std::size_t i = 0; i < mats.size(); ++i) {
        EXPECT_EQ(family.matrix(i), mats[i]);
        const auto av = mat_vec(mats[i], v);
        EXPECT_NEAR(w[i], std::inner_product(v.begin(), v.end(), av.begin(), 0.0), 1e-12);
    }
}

TEST(Snapshot, RoundTripIsExact) {
    auto s = make_stream(8, 0);
    std::vector<SymMatrix> mats;
    for (int i = 0; i < 5; ++i) mats.push_back(sample_goe(s, 3));
    const MatrixFamily family(mats);
    std::stringstream buf;
    write_snapshot(buf, family, 12.25);
    const Snapshot back = read_snapshot(buf);
    EXPECT_EQ(back.family, family);
    ASSERT_TRUE(back.threshold.has_value());
    EXPECT_EQ(*back.threshold, 12.25);

    std::stringstream no_t;
    write_snapshot(no_t, family);
    EXPECT_FALSE(read_snapshot(no_t).threshold.has_value());
}

TEST(Snapshot, BadMagicAndTruncation) {
    std::stringstream bad("NOTIT and some more bytes");
    EXPECT_THROW(read_snapshot(bad), IoError);

    std::stringstream buf;
    write_snapshot(buf, MatrixFamily(std::vector<SymMatrix>{SymMatrix::identity(4)}));
    std::string bytes = buf.str();
    bytes.resize(bytes.size() - 3);
    std::stringstream cut(bytes);
    EXPECT_THROW(read_snapshot(cut), IoError);
}
