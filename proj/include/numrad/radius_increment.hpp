#pragma once

/**
 * @file radius_increment.hpp
 * @brief omega(T + E) - omega(T) without cancellation.
 *
 * For Hermitian X with eigenpairs (mu_k, v_k), top value mu, and Y = X + P
 * with unit top eigenvector y:
 *
 *     lambda_max(Y) - mu = <P y, y> - sum_k (mu - mu_k) |<y, v_k>|^2.
 *
 * Both terms are computed directly, so the difference keeps full relative
 * accuracy when P is small. X is H_phi(T) at a polished peak of T and Y is
 * H_psi(T + E) at a polished peak of T + E.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "complex_matrix.hpp"
#include "hermitian_eigen.hpp"
#include "support_scan.hpp"

namespace numrad::detail {

inline constexpr std::size_t kModelGrid = 32;
inline constexpr double kModelScanTol = 1e-12;
inline constexpr double kModelPeakWindow = 1e-9;
/// Evaluation budget for each perturbed scan. Peaks are polished afterwards
/// either way; the budget only runs out when h_T is flat at the top (a disk
/// centred at 0), where no subdivision bound can certify the maximum cheaply.
inline constexpr std::size_t kIncrementBudget = 128;
inline constexpr std::size_t kIncrementPeaks = 6;

class RadiusModel {
public:
    /// A polished peak of h_T with the full eigendecomposition of H_angle(T).
    struct Peak {
        double angle = 0.0;
        double value = 0.0;
        HermitianEigen eig;
    };

    explicit RadiusModel(const CMatrix& t)
        : t_(t), h_(t), scan_(SupportScan::uniform(h_, kModelGrid, modulus_bound(t))) {
        scale_ = std::max(h_.lipschitz(), std::numeric_limits<double>::min());
        scan_.refine(h_, kModelScanTol * scale_);
        for (auto& p : refine_peaks(h_, scan_, kModelPeakWindow * scale_)) {
            Peak peak;
            peak.angle = p.angle;
            std::vector<Complex> buf(t_.size() * t_.size());
            h_.parts().assemble(p.angle, buf.data());
            peak.eig = herm_eig(CMatrix(t_.size(), std::move(buf)), true);
            peak.value = peak.eig.values.back();
            peaks_.push_back(std::move(peak));
        }
        omega_ = peaks_.empty() ? scan_.lower() : peaks_.front().value;
        for (const auto& p : peaks_) omega_ = std::max(omega_, p.value);
    }

    double omega() const noexcept { return omega_; }
    const CMatrix& op() const noexcept { return t_; }
    const SupportScan& scan() const noexcept { return scan_; }
    const std::vector<Peak>& peaks() const noexcept { return peaks_; }

    struct Increment {
        double value = 0.0;
        /// Rounding estimate. Small when the perturbed peak sits next to a
        /// base peak; of order eps * omega(T) when h_T is flat at the top.
        double error = 0.0;
    };

    /// omega(T + e) - omega(T). `shift` must bound omega(e) from above.
    double increment(const CMatrix& e, double shift) const { return increment_with_error(e, shift).value; }

    Increment increment_with_error(const CMatrix& e, double shift) const {
        const CMatrix tp = t_ + e;
        SupportFunction hp(tp);
        auto scan = SupportScan::seeded(hp, scan_, shift);
        scan.refine(hp, kModelScanTol * std::max(scale_, hp.lipschitz()), kIncrementBudget);
        const auto peaks = refine_peaks(hp, scan, kModelPeakWindow * std::max(scale_, hp.lipschitz()), kIncrementPeaks);
        constexpr double eps = std::numeric_limits<double>::epsilon();
        if (peaks.empty() || peaks_.empty()) return {scan.lower() - omega_, 4.0 * eps * std::max(omega_, scan.lower())};

        const HermitianParts eparts(e);
        const std::size_t n = t_.size();
        Increment best{-std::numeric_limits<double>::infinity(), 0.0};
        for (const auto& q : peaks) {
            const Peak* base = &peaks_.front();
            for (const auto& p : peaks_) {
                if (std::abs(angle_diff(q.angle, p.angle)) < std::abs(angle_diff(q.angle, base->angle))) base = &p;
            }
            const double d = angle_diff(q.angle, base->angle);
            const double mid = base->angle + 0.5 * d;
            const double half = std::sin(0.5 * d);
            const double dc = -2.0 * std::sin(mid) * half;
            const double ds = 2.0 * std::cos(mid) * half;
            const double pt = h_.parts().form(dc, ds, q.vector.data());
            const double pe = eparts.form(std::cos(q.angle), std::sin(q.angle), q.vector.data());
            double gap = 0.0;
            const double top = base->value;
            for (std::size_t k = 0; k + 1 < n; ++k) {
                Complex c{};
                for (std::size_t i = 0; i < n; ++i) c += std::conj(base->eig.vectors[k * n + i]) * q.vector[i];
                gap += (top - base->eig.values[k]) * std::norm(c);
            }
            const double value = (base->value - omega_) + pt + pe - gap;
            if (value > best.value) {
                double error = 8.0 * static_cast<double>(n) * eps * (std::abs(pt) + std::abs(pe) + gap);
                if (base->value != omega_) error += 2.0 * eps * omega_;
                best = {value, error};
            }
        }
        return best;
    }

private:
    CMatrix t_;
    SupportFunction h_;
    SupportScan scan_;
    std::vector<Peak> peaks_;
    double omega_ = 0.0;
    double scale_ = 1.0;
};

}  // namespace numrad::detail
