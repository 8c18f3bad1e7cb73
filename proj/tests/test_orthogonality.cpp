#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "numrad/numrad.hpp"

namespace {

using namespace numrad;

constexpr Complex kI{0.0, 1.0};

const CMatrix kCorner{{kI, 0.0}, {0.0, 0.0}};
const CMatrix kShear{{0.0, 1.0}, {0.0, -1.0}};
const CMatrix kE11{{1.0, 0.0}, {0.0, 0.0}};
const CMatrix kTwoZero{{2.0, 0.0}, {0.0, 0.0}};
const CMatrix kJordan{{1.0, 1.0}, {0.0, 1.0}};

class BothMethods : public ::testing::TestWithParam<OrthoMethod> {};

TEST_P(BothMethods, PublishedVerdicts) {
    const auto m = GetParam();
    EXPECT_TRUE(is_omega_orthogonal(kCorner, kShear, 0.0, m).orthogonal);
    EXPECT_FALSE(is_omega_orthogonal(kShear, kCorner, 0.005, m).orthogonal);
    EXPECT_FALSE(is_omega_orthogonal(kShear, kE11, 0.005, m).orthogonal);
    EXPECT_TRUE(is_omega_orthogonal(kTwoZero, kJordan, 0.7, m).orthogonal);
    EXPECT_FALSE(is_omega_orthogonal(kTwoZero, kJordan, 0.0, m).orthogonal);
}

TEST_P(BothMethods, ClaimedRangesHold) {
    const auto m = GetParam();
    for (double eps : {0.001, 0.004, 0.009}) EXPECT_FALSE(is_omega_orthogonal(kShear, kCorner, eps, m).orthogonal);
    for (double eps : {0.67, 0.8, 0.95}) EXPECT_TRUE(is_omega_orthogonal(kTwoZero, kJordan, eps, m).orthogonal);
}

TEST_P(BothMethods, SelfIsNeverOrthogonal) {
    oracle::Generator g(oracle::Seed{51});
    for (int k = 0; k < 10; ++k) {
        const auto t = g.general(g.dimension(2, 4));
        EXPECT_FALSE(is_omega_orthogonal(t, t, g.uniform(0.0, 0.99), GetParam()).orthogonal);
    }
}

TEST_P(BothMethods, ZeroOperandsAreOrthogonal) {
    EXPECT_TRUE(is_omega_orthogonal(CMatrix(2), kShear, 0.0, GetParam()).orthogonal);
    EXPECT_TRUE(is_omega_orthogonal(kShear, CMatrix(2), 0.0, GetParam()).orthogonal);
}

TEST_P(BothMethods, RejectsEpsilonOutOfRange) {
    EXPECT_THROW(is_omega_orthogonal(kShear, kE11, -0.1, GetParam()), std::invalid_argument);
    EXPECT_THROW(is_omega_orthogonal(kShear, kE11, 1.0, GetParam()), std::invalid_argument);
    EXPECT_THROW(is_omega_orthogonal(kShear, CMatrix::identity(3), 0.1, GetParam()), DimensionError);
}

INSTANTIATE_TEST_SUITE_P(Deciders, BothMethods, ::testing::Values(OrthoMethod::derivative, OrthoMethod::direct),
                         [](const auto& info) {
                             return std::string(info.param == OrthoMethod::derivative ? "Derivative" : "Direct");
                         });

TEST(OmegaOrthogonal, DerivativeReportFields) {
    const auto r = is_omega_orthogonal(kCorner, kShear, 0.0);
    EXPECT_EQ(r.method, OrthoMethod::derivative);
    ASSERT_TRUE(r.inf_derivative.has_value());
    ASSERT_TRUE(r.epsilon_star.has_value());
    EXPECT_NEAR(*r.epsilon_star, 0.0, 1e-6);
    EXPECT_EQ(r.threshold, 0.0);
    EXPECT_NEAR(r.margin, *r.inf_derivative - r.threshold, 1e-15);

    const auto d = is_omega_orthogonal(kTwoZero, kJordan, 0.7);
    EXPECT_NEAR(d.threshold, -0.7 * 2.0 * 1.5, 1e-9);
}

TEST(OmegaOrthogonal, DirectReportFindsViolatingLambda) {
    const auto r = is_omega_orthogonal(kTwoZero, kJordan, 0.0, OrthoMethod::direct);
    EXPECT_FALSE(r.orthogonal);
    EXPECT_FALSE(r.inf_derivative.has_value());
    EXPECT_FALSE(r.epsilon_star.has_value());
    EXPECT_LT(r.margin, 0.0);
    // The reported lambda really violates the defining inequality.
    const double wt = numerical_radius(kTwoZero).omega;
    const double w = numerical_radius(kTwoZero + r.worst_lambda * kJordan).omega;
    EXPECT_LT(w * w - wt * wt, 0.0);
}

TEST(OmegaOrthogonal, EpsilonStarConsistentWithVerdicts) {
    oracle::Generator g(oracle::Seed{52});
    int checked = 0;
    for (int k = 0; k < 40; ++k) {
        const std::size_t n = g.dimension(2, 4);
        const auto t = g.general(n), s = g.general(n);
        const double eps = g.uniform(0.0, 0.99);
        const auto r = is_omega_orthogonal(t, s, eps);
        ASSERT_TRUE(r.epsilon_star.has_value());
        if (std::abs(eps - *r.epsilon_star) < 1e-6) continue;
        ++checked;
        EXPECT_EQ(r.orthogonal, eps >= *r.epsilon_star) << "eps " << eps << " eps* " << *r.epsilon_star;
    }
    EXPECT_GE(checked, 30);
}

TEST(MinEpsilon, Examples) {
    EXPECT_LE(min_epsilon(kCorner, kShear), 1e-6);
    EXPECT_EQ(min_epsilon(kShear, kShear), 1.0);
    const double es = min_epsilon(kTwoZero, kJordan);
    EXPECT_GT(es, 0.0);
    EXPECT_LE(es, 2.0 / 3.0 + 1e-6);
}

TEST(MinEpsilon, SeparatesVerdicts) {
    oracle::Generator g(oracle::Seed{53});
    for (int k = 0; k < 15; ++k) {
        const std::size_t n = g.dimension(2, 4);
        const auto t = g.general(n) + 2.0 * CMatrix::identity(n), s = g.general(n);
        const double es = min_epsilon(t, s);
        ASSERT_GE(es, 0.0);
        ASSERT_LE(es, 1.0);
        if (es + 1e-4 < 1.0) {
            EXPECT_TRUE(is_omega_orthogonal(t, s, es + 1e-4, OrthoMethod::direct).orthogonal);
        }
        if (es - 1e-4 > 0.0) {
            EXPECT_FALSE(is_omega_orthogonal(t, s, es - 1e-4, OrthoMethod::direct).orthogonal);
        }
    }
}

TEST(BirkhoffJames, Examples) {
    EXPECT_TRUE(is_bj_orthogonal(kShear, kE11, 0.0));
    EXPECT_TRUE(is_bj_orthogonal(kE11, CMatrix::diagonal({0.0, 1.0}), 0.0));
    EXPECT_TRUE(is_bj_orthogonal(kShear, CMatrix(2), 0.5));
    oracle::Generator g(oracle::Seed{54});
    for (int k = 0; k < 10; ++k) {
        const auto t = g.general(g.dimension(2, 4));
        EXPECT_FALSE(is_bj_orthogonal(t, t, g.uniform(0.0, 0.99)));
    }
    EXPECT_THROW(is_bj_orthogonal(kShear, kE11, 1.0), std::invalid_argument);
}

TEST(BirkhoffJames, VerdictMatchesNormGrid) {
    // Violations found by brute force over a polar lambda grid must be reported.
    oracle::Generator g(oracle::Seed{55});
    for (int k = 0; k < 20; ++k) {
        const std::size_t n = g.dimension(2, 3);
        const auto t = g.general(n), s = g.general(n);
        const double eps = g.uniform(0.0, 0.99);
        const double nt = spectral_norm(t), ns = spectral_norm(s);
        double worst = 0.0;
        for (int i = 1; i <= 40; ++i) {
            const double r = 2.0 * nt / ns * i / 40.0;
            for (int j = 0; j < 64; ++j) {
                const double v = spectral_norm(t + std::polar(r, 2.0 * std::numbers::pi * j / 64.0) * s);
                worst = std::min(worst, v * v - nt * nt + 2.0 * eps * nt * ns * r);
            }
        }
        if (worst < -1e-6) {
            EXPECT_FALSE(is_bj_orthogonal(t, s, eps));
        }
        if (is_bj_orthogonal(t, s, eps)) {
            EXPECT_GE(worst, -1e-9);
        }
    }
}

}  // namespace
