#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "numrad/numrad.hpp"

namespace {

using namespace numrad;

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

TEST(NumericalRadius, PublishedValues) {
    EXPECT_NEAR(numerical_radius(CMatrix{{kI, 0.0}, {0.0, 0.0}}).omega, 1.0, 1e-10);
    EXPECT_NEAR(numerical_radius(CMatrix{{0.0, 1.0}, {0.0, -1.0}}).omega, (1.0 + std::sqrt(2.0)) / 2.0, 1e-10);
    EXPECT_NEAR(numerical_radius(CMatrix{{1.0, 1.0}, {0.0, -1.0}}).omega, std::sqrt(5.0) / 2.0, 1e-10);
    EXPECT_NEAR(numerical_radius(CMatrix{{0.5, 1.0}, {0.0, -1.0}}).omega, (1.0 + std::sqrt(13.0)) / 4.0, 1e-10);
    EXPECT_NEAR(numerical_radius(CMatrix{{1.0, 1.0}, {0.0, 1.0}}).omega, 1.5, 1e-10);
}

TEST(NumericalRadius, SimpleValues) {
    EXPECT_NEAR(numerical_radius(CMatrix::identity(4)).omega, 1.0, 1e-10);
    EXPECT_NEAR(numerical_radius(CMatrix{{0.0, 1.0}, {0.0, 0.0}}).omega, 0.5, 1e-10);
    EXPECT_EQ(numerical_radius(CMatrix(3)).omega, 0.0);
}

TEST(NumericalRadius, ResultInvariants) {
    oracle::Generator g(oracle::Seed{31});
    for (int k = 0; k < 100; ++k) {
        const auto t = g.general(g.dimension(1, 7));
        const double tol = 1e-10;
        const auto r = numerical_radius(t, tol);
        EXPECT_LE(r.enclosure.lower, r.omega);
        EXPECT_LE(r.omega, r.enclosure.upper);
        EXPECT_LE(r.enclosure.upper - r.enclosure.lower, tol);
        EXPECT_NEAR(std::abs(t.quadratic_form(r.maximizer.components())), r.omega, 1e-9);
        EXPECT_GE(r.theta_star, 0.0);
        EXPECT_LT(r.theta_star, 2.0 * kPi);
    }
}

TEST(NumericalRadius, HermitianEqualsNorm) {
    oracle::Generator g(oracle::Seed{32});
    for (int k = 0; k < 100; ++k) {
        const auto h = g.hermitian(g.dimension(1, 8));
        EXPECT_NEAR(numerical_radius(h).omega, spectral_norm(h), 1e-9);
    }
}

TEST(NumericalRadius, EnclosureSoundAgainstSampling) {
    oracle::Generator g(oracle::Seed{33});
    for (int k = 0; k < 200; ++k) {
        const auto t = g.general(g.dimension(1, 6));
        const double w = numerical_radius(t).omega;
        EXPECT_LE(oracle::sample_radius_lower(t, 200, oracle::Seed{1000u + static_cast<unsigned>(k)}), w + 1e-12);
        EXPECT_GE(radius_enclosure(t, 64).upper, w - 1e-12);
    }
}

TEST(RadiusEnclosure, Examples) {
    const auto e = radius_enclosure(CMatrix::identity(2), 8);
    EXPECT_LE(e.lower, 1.0);
    EXPECT_NEAR(e.lower, 1.0, 1e-15);
    EXPECT_GE(e.upper, 1.0);
    EXPECT_LE(e.upper, 1.0 + kPi / 8.0 + 1e-15);

    const auto z = radius_enclosure(CMatrix(2), 8);
    EXPECT_EQ(z.lower, 0.0);
    EXPECT_EQ(z.upper, 0.0);

    const double w = (1.0 + std::sqrt(2.0)) / 2.0;
    const auto s = radius_enclosure(CMatrix{{0.0, 1.0}, {0.0, -1.0}}, 4096);
    EXPECT_LE(s.lower, w);
    EXPECT_GE(s.upper, w);
    EXPECT_LE(s.upper - s.lower, std::sqrt(2.0) * kPi / 4096.0 * (1.0 + 1e-12));
}

TEST(CrawfordNumber, Examples) {
    EXPECT_NEAR(crawford_number(CMatrix::identity(2)), 1.0, 1e-10);
    EXPECT_NEAR(crawford_number(CMatrix::diagonal({1.0, -1.0})), 0.0, 1e-10);
    EXPECT_NEAR(crawford_number(CMatrix::diagonal({2.0, 1.0})), 1.0, 1e-10);
    EXPECT_NEAR(crawford_number(CMatrix{{kI, 0.0}, {0.0, 0.0}}), 0.0, 1e-10);
}

TEST(CrawfordNumber, SampledPointsNeverCloser) {
    oracle::Generator g(oracle::Seed{34});
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = g.dimension(1, 5);
        const auto t = g.general(n) + g.complex_normal() * 3.0 * CMatrix::identity(n);
        const double c = crawford_number(t);
        EXPECT_LE(c, numerical_radius(t).omega + 1e-10);
        for (int j = 0; j < 200; ++j) {
            EXPECT_GE(std::abs(t.quadratic_form(g.unit_vector(n))), c - 1e-9);
        }
    }
}

TEST(BoundaryPoints, Examples) {
    for (auto z : boundary_points(CMatrix::identity(2), 7)) EXPECT_NEAR(std::abs(z - 1.0), 0.0, 1e-14);
    for (auto z : boundary_points(CMatrix::diagonal({1.0, -1.0}), 16)) {
        EXPECT_NEAR(z.imag(), 0.0, 1e-14);
        EXPECT_LE(std::abs(z.real()), 1.0 + 1e-14);
    }
    for (auto z : boundary_points(CMatrix{{0.0, 1.0}, {0.0, 0.0}}, 360)) EXPECT_NEAR(std::abs(z), 0.5, 1e-8);
    EXPECT_THROW(boundary_points(CMatrix::identity(2), 2), std::invalid_argument);
}

TEST(BoundaryPoints, SupportLineTouchesRange) {
    oracle::Generator g(oracle::Seed{35});
    const auto t = g.general(4);
    const double w = numerical_radius(t).omega;
    const std::size_t count = 64;
    const auto pts = boundary_points(t, count);
    for (std::size_t k = 0; k < count; ++k) {
        const double phi = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count);
        const double support = herm_eig_max(hermitian_part(t, phi)).value;
        EXPECT_NEAR((std::polar(1.0, phi) * pts[k]).real(), support, 1e-12);
        EXPECT_LE(std::abs(pts[k]), w + 1e-12);
    }
}

TEST(Maximizers, Examples) {
    auto has = [](const MaximizerSet& set, double theta, std::size_t basis) {
        for (const auto& m : set) {
            const double d = std::abs(std::remainder(m.theta - theta, 2.0 * kPi));
            if (d < 1e-6 && std::abs(std::abs(m.vector[basis]) - 1.0) < 1e-6) return true;
        }
        return false;
    };
    const auto d = maximizers(CMatrix::diagonal({1.0, -1.0}));
    EXPECT_TRUE(has(d, 0.0, 0));
    EXPECT_TRUE(has(d, kPi, 1));

    // <T e1, e1> = i, rotated to the positive axis by e^{-i pi/2}.
    const auto c = maximizers(CMatrix{{kI, 0.0}, {0.0, 0.0}});
    EXPECT_TRUE(has(c, 3.0 * kPi / 2.0, 0));

    // h_I(theta) = cos(theta): every unit vector is a maximizer, all at theta = 0.
    const auto id = maximizers(CMatrix::identity(2));
    ASSERT_FALSE(id.empty());
    for (const auto& m : id) EXPECT_NEAR(std::abs(std::remainder(m.theta, 2.0 * kPi)), 0.0, 1e-6);
    EXPECT_THROW(maximizers(CMatrix(2)), std::invalid_argument);
}

TEST(Maximizers, EveryVectorAttainsRadius) {
    oracle::Generator g(oracle::Seed{36});
    for (int k = 0; k < 50; ++k) {
        const auto t = g.general(g.dimension(1, 6));
        const double w = numerical_radius(t).omega;
        const auto set = maximizers(t, 1e-8);
        ASSERT_FALSE(set.empty());
        for (const auto& m : set) EXPECT_GE(std::abs(t.quadratic_form(m.vector.components())), w - 1e-8);
    }
}

}  // namespace
