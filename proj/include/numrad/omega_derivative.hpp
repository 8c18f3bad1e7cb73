#pragma once

/**
 * @file omega_derivative.hpp
 * @brief One-sided derivative D^theta(T, S) of omega^2 and related quantities.
 *
 * f(r) = omega^2(T + r e^{i theta} S) is convex, so the difference quotient
 * (f(r) - f(0)) / (2r) is nondecreasing in r and its limit as r -> 0+ is
 * D^theta(T, S). The limit is approached along r_k = r0 2^{-k}.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "complex_matrix.hpp"
#include "numerical_range.hpp"
#include "radius_increment.hpp"

namespace numrad {

struct QuotientStep {
    double r = 0.0;
    double quotient = 0.0;
};

struct DerivativeResult {
    double value = 0.0;
    double theta = 0.0;
    std::vector<QuotientStep> quotient_trace;
    bool converged = false;
    /// |last quotient - previous quotient| at termination.
    double residual = 0.0;
};

struct InfDerivative {
    double value = 0.0;
    double worst_theta = 0.0;
    bool converged = true;
};

inline constexpr int kMaxHalvings = 60;
/// Quotient evaluations allowed when locating the worst angle.
inline constexpr std::size_t kScreenBudget = 384;

namespace detail {

/// Upper bound on omega(S), used to prune the perturbed scans.
inline double radius_upper(const CMatrix& s) {
    if (s.is_zero()) return 0.0;
    return numerical_radius(s, RadiusOptions{1e-12, 32}).enclosure.upper * (1.0 + 1e-12);
}

/// Slope bound at the origin: the largest Re(e^{i theta} c^* K c) over unit
/// combinations c of the columns of a basis, i.e. lambda_max of the rotated
/// Hermitian part of the compression K.
struct Compression {
    CMatrix k;

    double slope(double theta) const {
        if (k.size() == 1) return (std::polar(1.0, theta) * k(0, 0)).real();
        return herm_eig(hermitian_part(k, theta), false).values.back();
    }
};

/// Supporting lines at 0 from every peak of h_T at height omega(T). For x in
/// the top eigenspace of H_phi(T),
///     omega(T + lambda S) >= omega(T) + Re(lambda e^{i phi} <Sx, x>),
/// so slope(theta) bounds D^theta(T, S) / omega(T) from below.
class PeakMinorant {
public:
    PeakMinorant(const RadiusModel& model, const CMatrix& s) {
        const double wt = model.omega();
        const double scale = std::max(wt, std::numeric_limits<double>::min());
        const std::size_t n = s.size();
        for (const auto& p : model.peaks()) {
            if (p.value < wt - 1e-13 * scale) continue;
            std::vector<std::size_t> cols;
            for (std::size_t k = 0; k < n; ++k) {
                if (p.eig.values[k] >= p.value - 1e-12 * scale) cols.push_back(k);
            }
            const std::size_t m = cols.size();
            std::vector<Complex> kd(m * m);
            for (std::size_t a = 0; a < m; ++a) {
                const auto va = p.eig.vector(cols[a]);
                for (std::size_t b = 0; b < m; ++b) kd[a * m + b] = inner(s.apply(p.eig.vector(cols[b])), va);
            }
            CMatrix k(m, std::move(kd));
            curvature_ = std::max(curvature_, k.frobenius_norm());
            pieces_.emplace_back(p.angle, Compression{std::move(k)});
        }
    }

    /// -inf when there are no pieces.
    double slope(double theta) const {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& [phi, comp] : pieces_) best = std::max(best, comp.slope(theta + phi));
        return best;
    }

    /// Each piece is a support function h of a numerical range, so h'' >= -|h|.
    double curvature() const noexcept { return curvature_; }
    bool empty() const noexcept { return pieces_.empty(); }

private:
    std::vector<std::pair<double, Compression>> pieces_;
    double curvature_ = 0.0;
};

/// Quotient machinery shared by the derivative routines for a fixed pair.
class QuotientModel {
public:
    QuotientModel(const CMatrix& t, const CMatrix& s)
        : t_zero_(t.is_zero()), s_zero_(s.is_zero()), s_(s) {
        if (t.size() != s.size()) throw DimensionError("omega derivative: T and S must have equal size");
        omega_s_ = radius_upper(s);
        if (!t_zero_) model_.emplace(t);
        omega_t_ = t_zero_ ? 0.0 : model_->omega();
    }

    double omega_t() const noexcept { return omega_t_; }
    /// Null when T = 0.
    const RadiusModel* radius_model() const noexcept { return model_ ? &*model_ : nullptr; }
    double omega_s() const noexcept { return omega_s_; }

    /// Starting radius r0 = min(1, omega(T) / (1 + omega(S))).
    double initial_radius() const {
        const double r0 = std::min(1.0, omega_t_ / (1.0 + omega_s_));
        return r0 > 0.0 ? r0 : 1.0;
    }

    double quotient(double theta, double r) const { return quotient_with_error(theta, r).quotient; }

    struct Quotient {
        double quotient = 0.0;
        double error = 0.0;
    };

    Quotient quotient_with_error(double theta, double r) const {
        if (s_zero_) return {};
        if (t_zero_) {
            const double w = numerical_radius(s_, 1e-13).omega;
            return {0.5 * r * w * w, 0.0};
        }
        const CMatrix e = std::polar(r, theta) * s_;
        const auto inc = model_->increment_with_error(e, r * omega_s_ + std::numeric_limits<double>::min());
        return {inc.value * (2.0 * omega_t_ + inc.value) / (2.0 * r),
                inc.error * (omega_t_ + std::abs(inc.value)) / r};
    }

    /// Smallest power-of-two fraction of r0 at which the quotient at theta is
    /// still resolved to `noise`, capped at r0 * 2^-min_halvings.
    double resolved_radius(double theta, int min_halvings, double noise) const {
        const double r0 = initial_radius();
        double r = std::ldexp(r0, -min_halvings);
        while (r < r0 && quotient_with_error(theta, r).error > noise) r *= 2.0;
        return r;
    }

    DerivativeResult derivative(double theta, double tol) const {
        DerivativeResult out;
        out.theta = theta;
        if (s_zero_ || t_zero_) {
            out.quotient_trace.push_back({initial_radius(), quotient(theta, initial_radius())});
            out.value = 0.0;
            out.converged = true;
            return out;
        }
        // Halving stops early once rounding in the quotient reaches a quarter
        // of tol; smaller radii would only add noise.
        const double r0 = initial_radius();
        double prev_error = 0.0;
        for (int k = 0; k <= kMaxHalvings; ++k) {
            const double r = std::ldexp(r0, -k);
            const auto q = quotient_with_error(theta, r);
            out.quotient_trace.push_back({r, q.quotient});
            if (k > 0) {
                out.residual = std::abs(q.quotient - out.quotient_trace[k - 1].quotient);
                if (out.residual < tol) {
                    out.converged = true;
                    break;
                }
                if (q.error > 0.25 * tol) {
                    out.converged = out.residual < tol + q.error + prev_error;
                    break;
                }
            }
            prev_error = q.error;
        }
        out.value = out.quotient_trace.back().quotient;
        return out;
    }

private:
    bool t_zero_;
    bool s_zero_;
    CMatrix s_;
    std::optional<RadiusModel> model_;
    double omega_t_ = 0.0;
    double omega_s_ = 0.0;
};

/// Golden-section minimization of f on [a, b] down to width `width`.
template <class F>
std::pair<double, double> golden_minimize(F&& f, double a, double b, double width) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > width) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

struct PeriodicMin {
    double theta = 0.0;
    double value = 0.0;
    bool certified = false;
};

/// Global minimum of a 2 pi periodic f with f'' >= -curvature.
///
/// g = f + curvature (x - c)^2 / 2 is convex, so on each cell g lies above the
/// chords of both neighbouring cells extended inwards. That lower bound drives
/// a best-first refinement until no cell can beat the best sample by tol.
template <class F>
PeriodicMin minimize_semiconvex(F&& f, double curvature, std::size_t grid, double tol,
                                std::size_t max_evals = 2048) {
    grid = std::max<std::size_t>(grid, 4);
    std::vector<double> x(grid);
    std::vector<double> v(grid);
    for (std::size_t k = 0; k < grid; ++k) {
        x[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(grid);
        v[k] = f(x[k]);
    }
    const double R = std::max(curvature, 0.0);
    auto cell_bound = [&](std::size_t i) {
        const std::size_t m = x.size();
        auto at = [&](std::ptrdiff_t k) {
            const auto mm = static_cast<std::ptrdiff_t>(m);
            const std::ptrdiff_t w = ((k % mm) + mm) % mm;
            const double shift = kTwoPi * static_cast<double>((k - w) / mm);
            return std::pair{x[static_cast<std::size_t>(w)] + shift, v[static_cast<std::size_t>(w)]};
        };
        const auto ii = static_cast<std::ptrdiff_t>(i);
        const auto [x0, v0] = at(ii - 1);
        const auto [x1, v1] = at(ii);
        const auto [x2, v2] = at(ii + 1);
        const auto [x3, v3] = at(ii + 2);
        const double c = 0.5 * (x1 + x2);
        auto lift = [&](double xx, double vv) { return vv + 0.5 * R * (xx - c) * (xx - c); };
        const double g0 = lift(x0, v0), g1 = lift(x1, v1), g2 = lift(x2, v2), g3 = lift(x3, v3);
        const double sl = (g1 - g0) / (x1 - x0);
        const double sr = (g3 - g2) / (x3 - x2);
        auto lb = [&](double xx) {
            const double line = std::max(g1 + sl * (xx - x1), g2 + sr * (xx - x2));
            return line - 0.5 * R * (xx - c) * (xx - c);
        };
        double best = std::min(lb(x1), lb(x2));
        auto consider = [&](double xx) {
            if (xx > x1 && xx < x2 && std::isfinite(xx)) best = std::min(best, lb(xx));
        };
        if (sl != sr) consider((g2 - g1 + sl * x1 - sr * x2) / (sl - sr));
        if (R > 0.0) {
            consider(c + sl / R);
            consider(c + sr / R);
        }
        return best;
    };

    std::size_t evals = grid;
    while (true) {
        std::size_t best_k = 0;
        for (std::size_t k = 1; k < v.size(); ++k) {
            if (v[k] < v[best_k]) best_k = k;
        }
        std::size_t cell = 0;
        double low = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double b = cell_bound(i);
            if (b < low) {
                low = b;
                cell = i;
            }
        }
        const bool done = low >= v[best_k] - tol;
        const double x1 = x[cell];
        const double x2 = cell + 1 < x.size() ? x[cell + 1] : kTwoPi;
        if (done || evals >= max_evals || x2 - x1 < 1e-12) {
            return {x[best_k], v[best_k], done};
        }
        const double mid = 0.5 * (x1 + x2);
        x.insert(x.begin() + static_cast<std::ptrdiff_t>(cell + 1), mid);
        v.insert(v.begin() + static_cast<std::ptrdiff_t>(cell + 1), f(mid));
        ++evals;
    }
}

}  // namespace detail

/// (omega^2(T + r e^{i theta} S) - omega^2(T)) / (2r).
inline double diff_quotient(const CMatrix& t, const CMatrix& s, double theta, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("diff_quotient: r must be positive");
    return detail::QuotientModel(t, s).quotient(theta, r);
}

/// D^theta(T, S) as the limit of the halving quotient schedule.
inline DerivativeResult omega_derivative(const CMatrix& t, const CMatrix& s, double theta, double tol = 1e-8) {
    if (!(tol > 0.0)) throw std::invalid_argument("omega_derivative: tol must be positive");
    return detail::QuotientModel(t, s).derivative(theta, tol);
}

/// [S, T] = D^0(T, S).
inline DerivativeResult semi_inner(const CMatrix& s, const CMatrix& t, double tol = 1e-8) {
    return omega_derivative(t, s, 0.0, tol);
}

/// max over maximizers x of T of Re(e^{-i theta} <Tx,x> conj(<Sx,x>)).
/// An estimator: a degenerate or flat maximizer set may be under-resolved.
inline double derivative_via_maximizers(const CMatrix& t, const CMatrix& s, double theta) {
    if (t.is_zero()) throw std::invalid_argument("derivative_via_maximizers: T must be nonzero");
    if (t.size() != s.size()) throw DimensionError("derivative_via_maximizers: T and S must have equal size");
    const double scale = spectral_norm(t);
    const auto set = maximizers(t, 1e-14 * std::max(1.0, scale));
    const Complex rot = std::polar(1.0, -theta);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& m : set) {
        const Complex a = t.quadratic_form(m.vector.components());
        const Complex b = s.quadratic_form(m.vector.components());
        best = std::max(best, (rot * a * std::conj(b)).real());
    }
    return best;
}

struct InfDerivativeOptions {
    double tol = 1e-8;
    std::size_t grid = 32;
};

/// inf over theta of D^theta(T, S).
///
/// The angle is located on the quotient at one tiny radius r_s, an upper bound
/// on D^theta within O(r_s). As a function of theta that quotient satisfies
/// q'' >= -omega(T + r_s e^{i theta} S) omega(S), which makes a certified
/// global search over the circle possible. The derivative is then taken to
/// its limit at the located angle.
inline InfDerivative inf_derivative(const CMatrix& t, const CMatrix& s, const InfDerivativeOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("inf_derivative: tol must be positive");
    if (opts.grid < 4) throw std::invalid_argument("inf_derivative: grid must be at least 4");
    if (t.size() != s.size()) throw DimensionError("inf_derivative: T and S must have equal size");
    if (t.is_zero() || s.is_zero()) return {0.0, 0.0, true};

    const detail::QuotientModel model(t, s);
    const double screen_r = model.resolved_radius(0.0, 30, 0.01 * opts.tol);
    const double curvature = (model.omega_t() + screen_r * model.omega_s()) * model.omega_s() * (1.0 + 1e-9);
    double noise = 0.0;
    const auto located = detail::minimize_semiconvex(
        [&](double theta) {
            const auto q = model.quotient_with_error(theta, screen_r);
            noise = std::max(noise, q.error);
            return q.quotient;
        },
        curvature, opts.grid, 0.1 * opts.tol, kScreenBudget);
    const auto d = model.derivative(located.theta, opts.tol);
    bool certified = located.certified;
    if (!certified && !s.is_zero()) {
        // Flat stretches of q defeat the curvature bound. The peak minorant
        // bounds D^theta from below everywhere; certify against its minimum.
        const detail::PeakMinorant minorant(*model.radius_model(), s);
        if (!minorant.empty()) {
            const double wt = model.omega_t();
            const auto low = detail::minimize_semiconvex([&](double theta) { return wt * minorant.slope(theta); },
                                                         wt * minorant.curvature(), 64, 0.1 * opts.tol, 4096);
            certified = low.certified && d.value <= low.value + 0.9 * opts.tol;
        }
    }
    return {d.value, located.theta, d.converged && certified};
}

inline InfDerivative inf_derivative(const CMatrix& t, const CMatrix& s, double tol = 1e-8) {
    return inf_derivative(t, s, InfDerivativeOptions{tol, 32});
}

}  // namespace numrad
