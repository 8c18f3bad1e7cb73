#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "numrad/numrad.hpp"

namespace {

using namespace numrad;

constexpr Complex kI{0.0, 1.0};

void expect_matrix_eq(const CMatrix& a, const CMatrix& b, double tol) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            EXPECT_LE(std::abs(a(i, j) - b(i, j)), tol) << "entry " << i << "," << j;
        }
    }
}

TEST(Adjoint, ConjugateTranspose) {
    expect_matrix_eq(adjoint(CMatrix{{kI, 0.0}, {0.0, 0.0}}), CMatrix{{-kI, 0.0}, {0.0, 0.0}}, 0.0);
    expect_matrix_eq(adjoint(CMatrix{{0.0, 1.0}, {0.0, 0.0}}), CMatrix{{0.0, 0.0}, {1.0, 0.0}}, 0.0);
}

TEST(Adjoint, HermitianFixed) {
    const CMatrix h{{2.0, 1.0}, {1.0, 2.0}};
    expect_matrix_eq(adjoint(h), h, 0.0);
}

TEST(Adjoint, Involution) {
    oracle::Generator g(oracle::Seed{11});
    for (int k = 0; k < 100; ++k) {
        const auto t = g.general(g.dimension(1, 8));
        expect_matrix_eq(adjoint(adjoint(t)), t, 0.0);
    }
}

TEST(HermitianPart, Examples) {
    expect_matrix_eq(hermitian_part(CMatrix::identity(2), std::numbers::pi / 2), CMatrix(2), 1e-15);
    expect_matrix_eq(hermitian_part(CMatrix{{0.0, 1.0}, {0.0, 0.0}}, 0.0), CMatrix{{0.0, 0.5}, {0.5, 0.0}}, 0.0);
    const CMatrix a{{3.0, Complex(1.0, -2.0)}, {Complex(1.0, 2.0), -1.0}};
    expect_matrix_eq(hermitian_part(a, 0.0), a, 0.0);
}

TEST(HermitianPart, AlwaysHermitianAndMatchesForm) {
    oracle::Generator g(oracle::Seed{12});
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = g.dimension(1, 8);
        const auto t = g.general(n);
        const double theta = g.uniform(0.0, 2.0 * std::numbers::pi);
        const auto h = hermitian_part(t, theta);
        EXPECT_LE(h.hermitian_defect(), 1e-15 * std::max(1.0, h.frobenius_norm()));
        const auto x = g.unit_vector(n);
        const double lhs = h.quadratic_form(x).real();
        const double rhs = (std::polar(1.0, theta) * t.quadratic_form(x)).real();
        EXPECT_NEAR(lhs, rhs, 1e-12);
    }
}

TEST(RankOne, Examples) {
    const std::vector<Complex> e1{1.0, 0.0}, e2{0.0, 1.0};
    expect_matrix_eq(rank_one(e1, e1), CMatrix{{1.0, 0.0}, {0.0, 0.0}}, 0.0);
    expect_matrix_eq(rank_one(e1, e2), CMatrix{{0.0, 1.0}, {0.0, 0.0}}, 0.0);
    const double s = 1.0 / std::numbers::sqrt2;
    const std::vector<Complex> x{s, s};
    expect_matrix_eq(rank_one(x, e1), CMatrix{{s, 0.0}, {s, 0.0}}, 0.0);
}

TEST(RankOne, ActsAsInnerTimesVector) {
    oracle::Generator g(oracle::Seed{13});
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = g.dimension(2, 6);
        const auto x = g.gaussian_vector(n), y = g.gaussian_vector(n), z = g.gaussian_vector(n);
        const auto got = rank_one(x, y).apply(z);
        const Complex c = inner(z, y);
        for (std::size_t i = 0; i < n; ++i) EXPECT_LE(std::abs(got[i] - c * x[i]), 1e-12);
    }
}

TEST(CMatrix, RejectsBadShapes) {
    EXPECT_THROW(CMatrix(2, std::vector<Complex>(3)), DimensionError);
    EXPECT_THROW((CMatrix{{1.0, 2.0}, {3.0}}), DimensionError);
    EXPECT_THROW(CMatrix(kMaxDimension + 1), DimensionError);
    EXPECT_THROW(CMatrix(1, std::vector<Complex>{Complex(NAN, 0.0)}), std::invalid_argument);
    EXPECT_THROW(CMatrix::identity(2) + CMatrix::identity(3), DimensionError);
}

TEST(CMatrix, Arithmetic) {
    const CMatrix a{{1.0, 2.0}, {3.0, 4.0}};
    const CMatrix b{{0.0, 1.0}, {1.0, 0.0}};
    expect_matrix_eq(a * b, CMatrix{{2.0, 1.0}, {4.0, 3.0}}, 0.0);
    expect_matrix_eq(a - a, CMatrix(2), 0.0);
    expect_matrix_eq(kI * b, CMatrix{{0.0, kI}, {kI, 0.0}}, 0.0);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_DOUBLE_EQ(b.frobenius_norm(), std::numbers::sqrt2);
    EXPECT_EQ(a.quadratic_form(std::vector<Complex>{1.0, 0.0}), Complex(1.0));
}

TEST(UnitVector, NormalizesAndRejectsZero) {
    const UnitVector u(std::vector<Complex>{3.0, Complex(0.0, 4.0)});
    EXPECT_NEAR(norm2(u.components()), 1.0, 1e-15);
    EXPECT_THROW(UnitVector(std::vector<Complex>{0.0, 0.0}), std::invalid_argument);
}

}  // namespace
