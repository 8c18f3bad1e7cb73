#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force and closed-form references, and seeded instance streams.
 *
 * Nothing here calls the support-function machinery of numerical_range.hpp,
 * so the references stay independent of the code they check.
 *
 * Random streams use std::mt19937_64 (MT19937-64, fully specified by the C++
 * standard). A uniform double takes the top 53 bits of one draw, and normals
 * come from the Box-Muller transform, so a seed reproduces the same instances
 * on every conforming platform.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "complex_matrix.hpp"
#include "hermitian_eigen.hpp"

namespace numrad::oracle {

struct Seed {
    std::uint64_t value = 0;
};

class Generator {
public:
    explicit Generator(Seed seed) : engine_(seed.value) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Integer uniform on [lo, hi].
    std::size_t dimension(std::size_t lo, std::size_t hi) {
        return lo + static_cast<std::size_t>(uniform() * static_cast<double>(hi - lo + 1));
    }

    double normal() {
        if (cached_) {
            cached_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        spare_ = rad * std::sin(2.0 * std::numbers::pi * u2);
        cached_ = true;
        return rad * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Standard complex Gaussian, E|z|^2 = 1.
    Complex complex_normal() { return Complex(normal(), normal()) * std::numbers::sqrt2 * 0.5; }

    std::vector<Complex> gaussian_vector(std::size_t n) {
        std::vector<Complex> v(n);
        for (auto& z : v) z = complex_normal();
        return v;
    }

    std::vector<Complex> unit_vector(std::size_t n) {
        auto v = gaussian_vector(n);
        const double nrm = norm2(v);
        for (auto& z : v) z /= nrm;
        return v;
    }

    CMatrix general(std::size_t n) { return CMatrix(n, gaussian_vector(n * n)); }

    /// (A + A^*) / 2, Hermitian bit for bit.
    CMatrix hermitian(std::size_t n) {
        const CMatrix a = general(n);
        std::vector<Complex> d(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i * n + i] = a(i, i).real();
            for (std::size_t j = i + 1; j < n; ++j) {
                const Complex h = 0.5 * (a(i, j) + std::conj(a(j, i)));
                d[i * n + j] = h;
                d[j * n + i] = std::conj(h);
            }
        }
        return CMatrix(n, std::move(d));
    }

    /// A^* A, scaled to unit spectral norm when `normalize` is set.
    CMatrix positive(std::size_t n, bool normalize = false) {
        const CMatrix a = general(n);
        CMatrix p = adjoint(a) * a;
        p = symmetrize(p);
        if (normalize) {
            const double top = herm_eig(p, false).values.back();
            p = symmetrize(Complex(1.0 / top) * p);
        }
        return p;
    }

    /// Modified Gram-Schmidt on the columns of a Gaussian matrix.
    CMatrix unitary(std::size_t n) {
        std::vector<std::vector<Complex>> cols;
        while (cols.size() < n) {
            auto v = gaussian_vector(n);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : cols) {
                    const Complex c = inner(v, q);
                    for (std::size_t i = 0; i < n; ++i) v[i] -= c * q[i];
                }
            }
            const double nrm = norm2(v);
            if (nrm < 1e-8) continue;
            for (auto& z : v) z /= nrm;
            cols.push_back(std::move(v));
        }
        std::vector<Complex> d(n * n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) d[i * n + j] = cols[j][i];
        }
        return CMatrix(n, std::move(d));
    }

    /// x (x) y with <x, y> = 0, so the square vanishes.
    CMatrix nilpotent(std::size_t n) {
        if (n < 2) throw DimensionError("nilpotent: dimension must be at least 2");
        const auto x = unit_vector(n);
        auto y = gaussian_vector(n);
        const Complex c = inner(y, x);
        for (std::size_t i = 0; i < n; ++i) y[i] -= c * x[i];
        return rank_one(x, y);
    }

private:
    static CMatrix symmetrize(const CMatrix& p) {
        const std::size_t n = p.size();
        std::vector<Complex> d(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i * n + i] = p(i, i).real();
            for (std::size_t j = i + 1; j < n; ++j) {
                const Complex h = 0.5 * (p(i, j) + std::conj(p(j, i)));
                d[i * n + j] = h;
                d[j * n + i] = std::conj(h);
            }
        }
        return CMatrix(n, std::move(d));
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool cached_ = false;
};

/// max |<T x, x>| over `samples` random unit vectors.
inline double sample_radius_lower(const CMatrix& t, std::size_t samples, Seed seed) {
    if (samples < 1) throw std::invalid_argument("sample_radius_lower: samples must be at least 1");
    Generator gen(seed);
    double best = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const auto x = gen.unit_vector(t.size());
        best = std::max(best, std::abs(t.quadratic_form(x)));
    }
    return best;
}

/// Radius of the elliptical numerical range of a 2x2 matrix.
///
/// W(T) is the ellipse with foci mu1, mu2 and minor semi-axis b,
/// b^2 = (tr T^*T - |mu1|^2 - |mu2|^2) / 4. Its points are
/// c + e^{i a}(A cos t + i b sin t) with c the centre, A^2 = b^2 + |mu1 - mu2|^2/4.
inline double ellipse_radius_2x2(const CMatrix& t) {
    if (t.size() != 2) throw DimensionError("ellipse_radius_2x2: matrix must be 2x2");
    const Complex tr = t(0, 0) + t(1, 1);
    const Complex det = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    const Complex mu1 = 0.5 * (tr + disc);
    const Complex mu2 = 0.5 * (tr - disc);
    double frob = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) frob += std::norm(t(i, j));
    }
    const double b2 = std::max(0.0, 0.25 * (frob - std::norm(mu1) - std::norm(mu2)));
    const double b = std::sqrt(b2);
    const double half_focal = 0.5 * std::abs(mu1 - mu2);
    const double a = std::sqrt(b2 + half_focal * half_focal);
    const Complex centre = 0.5 * (mu1 + mu2);
    const Complex axis = half_focal > 0.0 ? (mu1 - mu2) / std::abs(mu1 - mu2) : Complex(1.0);

    auto modulus = [&](double s) { return std::abs(centre + axis * Complex(a * std::cos(s), b * std::sin(s))); };
    constexpr int grid = 720;
    double best = 0.0;
    int best_k = 0;
    for (int k = 0; k < grid; ++k) {
        const double v = modulus(2.0 * std::numbers::pi * k / grid);
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    // golden-section search for the maximum on the bracketing grid cells
    constexpr double inv_phi = 0.6180339887498949;
    double lo = 2.0 * std::numbers::pi * (best_k - 1) / grid;
    double hi = 2.0 * std::numbers::pi * (best_k + 1) / grid;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = modulus(c);
    double fd = modulus(d);
    while (hi - lo > 1e-12) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = modulus(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = modulus(d);
        }
    }
    return std::max({best, fc, fd});
}

/// Numerical radius by sampling lambda_max(H_phi) on `grid` angles and
/// golden-section refinement, down to angle width `width`, around the three
/// best samples.
inline double brute_radius(const CMatrix& t, std::size_t grid = 48, double width = 1e-9) {
    if (t.is_zero()) return 0.0;
    const std::size_t n = t.size();
    detail::JacobiWorkspace ws(n);
    auto h = [&](double phi) {
        const Complex rot = std::polar(1.0, phi);
        Complex* a = ws.data();
        for (std::size_t i = 0; i < n; ++i) {
            a[i * n + i] = (rot * t(i, i)).real();
            for (std::size_t j = i + 1; j < n; ++j) {
                const Complex v = 0.5 * (rot * t(i, j) + std::conj(rot * t(j, i)));
                a[i * n + j] = v;
                a[j * n + i] = std::conj(v);
            }
        }
        return ws.largest();
    };
    const double step = 2.0 * std::numbers::pi / static_cast<double>(grid);
    std::vector<std::pair<double, std::size_t>> ring(grid);
    for (std::size_t k = 0; k < grid; ++k) ring[k] = {h(step * static_cast<double>(k)), k};
    std::partial_sort(ring.begin(), ring.begin() + 3, ring.end(), std::greater<>());
    double best = ring.front().first;
    constexpr double inv_phi = 0.6180339887498949;
    for (std::size_t j = 0; j < 3; ++j) {
        const double mid = step * static_cast<double>(ring[j].second);
        double lo = mid - step;
        double hi = mid + step;
        double c = hi - inv_phi * (hi - lo);
        double d = lo + inv_phi * (hi - lo);
        double fc = h(c);
        double fd = h(d);
        while (hi - lo > width) {
            if (fc >= fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - inv_phi * (hi - lo);
                fc = h(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + inv_phi * (hi - lo);
                fd = h(d);
            }
        }
        best = std::max({best, fc, fd});
    }
    return best;
}

struct LambdaScan {
    double min_margin = 0.0;
    Complex argmin_lambda{};
};

/// Minimum of w^2(T + lambda S) - w^2(T) + 2 eps |lambda| w(T) w(S) over a polar
/// grid: `grid_theta` angles and `grid_r` radii spaced geometrically from
/// r_max 2^{-12} up to r_max = 2 w(T) / w(S).
inline LambdaScan direct_lambda_scan(const CMatrix& t, const CMatrix& s, double eps, std::size_t grid_r,
                                     std::size_t grid_theta) {
    if (grid_r < 16 || grid_theta < 16) throw std::invalid_argument("direct_lambda_scan: grids must be at least 16");
    if (t.size() != s.size()) throw DimensionError("direct_lambda_scan: T and S must have equal size");
    const double ws = brute_radius(s, 96);
    if (ws == 0.0) return {};
    const double wt = brute_radius(t, 96);
    const double r_max = 2.0 * wt / ws;
    LambdaScan out;
    if (wt == 0.0) return out;
    const double ratio = std::pow(2.0, -12.0 / static_cast<double>(grid_r - 1));
    for (std::size_t j = 0; j < grid_theta; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid_theta);
        double r = r_max;
        for (std::size_t k = 0; k < grid_r; ++k, r *= ratio) {
            const Complex lambda = std::polar(r, theta);
            const double w = brute_radius(t + lambda * s, 24, 1e-6);
            const double g = w * w - wt * wt + 2.0 * eps * r * wt * ws;
            if (g < out.min_margin) {
                out.min_margin = g;
                out.argmin_lambda = lambda;
            }
        }
    }
    return out;
}

}  // namespace numrad::oracle
