#pragma once

/**
 * @file numerical_range.hpp
 * @brief Numerical radius, Crawford number, boundary of W(T) and maximizers.
 *
 * Rotation convention: omega(T) = max_theta lambda_max(H_theta) with
 * H_theta = (e^{i theta} T + e^{-i theta} T^*)/2. The support point of W(T)
 * at angle theta is <T x, x> for a top eigenvector x of H_theta, and it
 * satisfies Re(e^{i theta} <T x, x>) = lambda_max(H_theta). For T = diag(i, 0)
 * the maximizing angle is 3 pi / 2.
 */

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "complex_matrix.hpp"
#include "hermitian_eigen.hpp"
#include "support_scan.hpp"

namespace numrad {

struct Enclosure {
    double lower = 0.0;
    double upper = 0.0;
};

struct RadiusResult {
    double omega = 0.0;
    double theta_star = 0.0;
    UnitVector maximizer;
    Enclosure enclosure;
};

struct RadiusOptions {
    double tol = 1e-10;
    std::size_t grid = 32;
};

struct Maximizer {
    double theta = 0.0;
    UnitVector vector;
};

using MaximizerSet = std::vector<Maximizer>;

inline RadiusResult numerical_radius(const CMatrix& t, const RadiusOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("numerical_radius: tol must be positive");
    if (t.is_zero()) return {0.0, 0.0, UnitVector::basis(t.size(), 0), {0.0, 0.0}};

    detail::SupportFunction h(t);
    auto scan = detail::SupportScan::uniform(h, opts.grid, detail::modulus_bound(t));
    scan.refine(h, opts.tol);
    auto peaks = detail::refine_peaks(h, scan, opts.tol, 4);

    RadiusResult out;
    out.enclosure.lower = scan.lower();
    if (!peaks.empty() && peaks.front().value >= scan.lower()) {
        const auto& best = peaks.front();
        out.omega = best.value;
        out.theta_star = best.angle;
        out.maximizer = UnitVector(best.vector);
        out.enclosure.lower = best.value;
    } else {
        auto p = h.point(scan.best().angle);
        out.omega = scan.lower();
        out.theta_star = detail::wrap_angle(p.angle);
        out.maximizer = UnitVector(p.vector);
    }
    out.enclosure.upper = std::max(scan.upper(), out.enclosure.lower);
    return out;
}

inline RadiusResult numerical_radius(const CMatrix& t, double tol = 1e-10) {
    return numerical_radius(t, RadiusOptions{tol, 32});
}

/// Grid lower bound and the Lipschitz upper bound lower + ||T|| pi / grid.
inline Enclosure radius_enclosure(const CMatrix& t, std::size_t grid) {
    if (grid < 8) throw std::invalid_argument("radius_enclosure: grid must be at least 8");
    detail::SupportFunction h(t);
    double lower = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid; ++k) {
        lower = std::max(lower, h(detail::kTwoPi * static_cast<double>(k) / static_cast<double>(grid)));
    }
    lower = std::max(lower, 0.0);
    return {lower, lower + h.lipschitz() * std::numbers::pi / static_cast<double>(grid)};
}

namespace detail {

/// Largest value of min(Re(e^{i phi} z0), Re(e^{i phi} z1)) over phi in [a0, a1].
inline double max_of_min_support(double a0, Complex z0, double a1, Complex z1) {
    auto f = [&](double phi) {
        const Complex e = std::polar(1.0, phi);
        return std::min((e * z0).real(), (e * z1).real());
    };
    double best = std::max(f(a0), f(a1));
    auto consider = [&](double phi) {
        double p = a0 + wrap_angle(phi - a0);
        if (p <= a1) best = std::max(best, f(p));
        p -= std::numbers::pi;
        if (p >= a0 && p <= a1) best = std::max(best, f(p));
        p += kTwoPi;
        if (p >= a0 && p <= a1) best = std::max(best, f(p));
    };
    const Complex dz = z0 - z1;
    if (dz != Complex{}) consider(0.5 * std::numbers::pi - std::arg(dz));
    if (z0 != Complex{}) consider(-std::arg(z0));
    if (z1 != Complex{}) consider(-std::arg(z1));
    return best;
}

}  // namespace detail

/// Distance from 0 to W(T), as max(0, max_theta lambda_min(H_theta)).
///
/// Each sample also yields the point z = <T x, x> in W(T) for a bottom
/// eigenvector x, and lambda_min(H_phi) <= Re(e^{i phi} z) everywhere, which
/// bounds every cell from above.
inline double crawford_number(const CMatrix& t, double tol = 1e-10) {
    if (!(tol > 0.0)) throw std::invalid_argument("crawford_number: tol must be positive");
    if (t.is_zero()) return 0.0;
    const std::size_t n = t.size();
    const detail::HermitianParts parts(t);
    const double lip = spectral_norm(t);
    const double pad = 64.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * t.frobenius_norm();

    std::vector<Complex> a(n * n);
    std::vector<Complex> v(n * n);
    struct Sample {
        double angle;
        double value;
        Complex point;
    };
    auto sample = [&](double phi) {
        parts.assemble(phi, a.data());
        detail::jacobi_diagonalize(a.data(), n, v.data());
        std::size_t low = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (a[i * n + i].real() < a[low * n + low].real()) low = i;
        }
        std::vector<Complex> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = v[i * n + low];
        return Sample{phi, a[low * n + low].real(), t.quadratic_form(x)};
    };

    struct Cell {
        Sample s0;
        Sample s1;
        double bound;
        bool operator<(const Cell& o) const { return bound < o.bound; }
    };
    auto make_cell = [&](const Sample& s0, const Sample& s1) {
        const double d = 0.5 * (s1.angle - s0.angle);
        double b = detail::max_of_min_support(s0.angle, s0.point, s1.angle, s1.point);
        b = std::min(b, 0.5 * (s0.value + s1.value) + lip * d);
        return Cell{s0, s1, std::max(b, std::max(s0.value, s1.value)) + pad};
    };

    constexpr std::size_t grid = 64;
    std::vector<Sample> ring;
    for (std::size_t k = 0; k < grid; ++k) ring.push_back(sample(detail::kTwoPi * static_cast<double>(k) / grid));
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& s : ring) best = std::max(best, s.value);

    std::priority_queue<Cell> heap;
    for (std::size_t k = 0; k < grid; ++k) {
        Sample s1 = ring[(k + 1) % grid];
        if (k + 1 == grid) s1.angle = detail::kTwoPi;
        heap.push(make_cell(ring[k], s1));
    }
    std::size_t budget = detail::kMaxScanEvaluations;
    while (!heap.empty() && budget-- > 0) {
        const Cell top = heap.top();
        if (top.bound <= 0.0) return 0.0;
        if (top.bound - best <= tol) break;
        heap.pop();
        if (top.s1.angle - top.s0.angle < detail::kMinCellWidth) continue;
        const Sample mid = sample(0.5 * (top.s0.angle + top.s1.angle));
        best = std::max(best, mid.value);
        heap.push(make_cell(top.s0, mid));
        heap.push(make_cell(mid, top.s1));
    }
    return std::max(0.0, best);
}

/// Support points <T x_k, x_k> at the equispaced angles 2 pi k / count.
inline std::vector<Complex> boundary_points(const CMatrix& t, std::size_t count) {
    if (count < 3) throw std::invalid_argument("boundary_points: count must be at least 3");
    detail::SupportFunction h(t);
    std::vector<Complex> pts;
    pts.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto p = h.point(detail::kTwoPi * static_cast<double>(k) / static_cast<double>(count));
        pts.push_back(t.quadratic_form(p.vector));
    }
    return pts;
}

/// Every sampled support angle whose support value is within tol of omega(T),
/// paired with a top eigenvector of H_theta, plus the polished peaks.
inline MaximizerSet maximizers(const CMatrix& t, double tol = 1e-8) {
    if (t.is_zero()) throw std::invalid_argument("maximizers: zero matrix has no distinguished maximizers");
    if (!(tol > 0.0)) throw std::invalid_argument("maximizers: tol must be positive");

    detail::SupportFunction h(t);
    auto scan = detail::SupportScan::uniform(h, 1024, detail::modulus_bound(t));
    scan.refine(h, 1e-10 * std::max(1.0, scan.lower()));
    auto peaks = detail::refine_peaks(h, scan, tol, 64);
    double omega = scan.lower();
    for (const auto& p : peaks) omega = std::max(omega, p.value);

    MaximizerSet out;
    std::vector<double> seen;
    auto add = [&](const detail::SupportPoint& p) {
        const double a = detail::wrap_angle(p.angle);
        for (double s : seen) {
            if (std::abs(detail::angle_diff(a, s)) < 1e-12) return;
        }
        seen.push_back(a);
        out.push_back({a, UnitVector(p.vector)});
    };
    for (const auto& p : peaks) {
        if (p.value >= omega - tol) add(p);
    }
    for (const auto& s : scan.sorted_samples()) {
        if (s.value >= omega - tol) add(h.point(s.angle));
    }
    std::sort(out.begin(), out.end(), [](const Maximizer& x, const Maximizer& y) { return x.theta < y.theta; });
    return out;
}

}  // namespace numrad
