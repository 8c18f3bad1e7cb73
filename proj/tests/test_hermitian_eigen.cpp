#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "numrad/numrad.hpp"

namespace {

using namespace numrad;

TEST(HermEigMax, Examples) {
    const auto a = herm_eig_max(CMatrix{{0.0, 0.5}, {0.5, 0.0}});
    EXPECT_NEAR(a.value, 0.5, 1e-15);
    // (1,1)/sqrt2 up to phase
    EXPECT_NEAR(std::abs(a.vector[0]), 1.0 / std::numbers::sqrt2, 1e-14);
    EXPECT_NEAR(std::abs(a.vector[0] - a.vector[1]), 0.0, 1e-14);

    const auto b = herm_eig_max(CMatrix::diagonal({3.0, -4.0}));
    EXPECT_DOUBLE_EQ(b.value, 3.0);
    EXPECT_NEAR(std::abs(b.vector[0]), 1.0, 1e-15);

    EXPECT_NEAR(herm_eig_max(CMatrix{{2.0, 1.0}, {1.0, 2.0}}).value, 3.0, 1e-14);
}

TEST(HermEigMax, RejectsNonHermitian) {
    EXPECT_THROW(herm_eig_max(CMatrix{{0.0, 1.0}, {0.0, 0.0}}), std::invalid_argument);
}

TEST(HermEigMax, DominatesRayleighQuotients) {
    oracle::Generator g(oracle::Seed{21});
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = g.dimension(1, 8);
        const auto h = g.hermitian(n);
        const double top = herm_eig_max(h).value;
        for (int j = 0; j < 1000; ++j) {
            const auto x = g.unit_vector(n);
            ASSERT_GE(top, h.quadratic_form(x).real() - 1e-10);
        }
    }
}

TEST(HermEig, ResidualsAndOrthonormality) {
    oracle::Generator g(oracle::Seed{22});
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = g.dimension(1, 12);
        const auto h = g.hermitian(n);
        const auto e = herm_eig(h);
        const double scale = std::max(1.0, h.frobenius_norm());
        for (std::size_t c = 0; c < n; ++c) {
            const auto v = e.vector(c);
            const auto hv = h.apply(v);
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res += std::norm(hv[i] - e.values[c] * v[i]);
            EXPECT_LE(std::sqrt(res), 1e-13 * scale);
            for (std::size_t d = 0; d < n; ++d) {
                const double want = c == d ? 1.0 : 0.0;
                EXPECT_NEAR(std::abs(inner(v, e.vector(d))), want, 1e-13);
            }
            if (c > 0) {
                EXPECT_LE(e.values[c - 1], e.values[c]);
            }
        }
    }
}

TEST(SpectralNorm, Examples) {
    EXPECT_NEAR(spectral_norm(CMatrix{{0.0, 1.0}, {0.0, -1.0}}), std::numbers::sqrt2, 1e-14);
    EXPECT_NEAR(spectral_norm(CMatrix::identity(3)), 1.0, 1e-15);
    EXPECT_NEAR(spectral_norm(CMatrix::diagonal({3.0, -4.0})), 4.0, 1e-14);
    EXPECT_EQ(spectral_norm(CMatrix(3)), 0.0);
}

TEST(SpectralNorm, UnitaryHasNormOne) {
    oracle::Generator g(oracle::Seed{23});
    for (int k = 0; k < 100; ++k) {
        EXPECT_NEAR(spectral_norm(g.unitary(g.dimension(1, 10))), 1.0, 1e-9);
    }
}

TEST(SpectralNorm, BoundedByFrobenius) {
    oracle::Generator g(oracle::Seed{24});
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = g.dimension(1, 8);
        const auto t = g.general(n);
        const double s = spectral_norm(t);
        EXPECT_LE(s, t.frobenius_norm() * (1.0 + 1e-14));
        EXPECT_GE(s * std::sqrt(static_cast<double>(n)), t.frobenius_norm() * (1.0 - 1e-14));
    }
}

}  // namespace
