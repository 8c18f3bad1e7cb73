#pragma once

/**
 * @file orthogonality.hpp
 * @brief Approximate numerical-radius and Birkhoff-James orthogonality.
 *
 * T is eps-orthogonal to S in the numerical-radius sense when
 *
 *     G(lambda) = w^2(T + lambda S) - w^2(T) + 2 eps |lambda| w(T) w(S) >= 0
 *
 * for every complex lambda. The derivative method compares
 * inf_theta D^theta(T, S) with -eps w(T) w(S). The direct method minimizes G
 * along rays lambda = r e^{i theta}. G is convex with G(0) = 0, so along each
 * ray every chord extended outward lies below G. Any supporting line at 0
 * certifies a whole ray at once.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "complex_matrix.hpp"
#include "hermitian_eigen.hpp"
#include "numerical_range.hpp"
#include "omega_derivative.hpp"

namespace numrad {

enum class OrthoMethod { derivative, direct };

inline constexpr double kVerdictTol = 1e-9;
/// Tolerance on G for the direct decider, relative to omega(T)^2.
inline constexpr double kDirectRelTol = 1e-14;

struct OrthoReport {
    bool orthogonal = true;
    double epsilon = 0.0;
    /// inf_theta D^theta(T, S); derivative method only.
    std::optional<double> inf_derivative;
    double worst_theta = 0.0;
    /// -eps w(T) w(S).
    double threshold = 0.0;
    /// Smallest admissible eps, 1 when none in [0, 1) works; derivative method only.
    std::optional<double> epsilon_star;
    OrthoMethod method = OrthoMethod::derivative;
    /// Derivative method: inf_derivative - threshold. Direct method: the
    /// smallest G(lambda) found. Orthogonal iff margin >= -tol, with tol = 1e-9
    /// for the derivative method and 1e-14 w(T)^2 for the direct method.
    double margin = 0.0;
    /// The minimizing lambda of the direct search (0 when every ray is clean).
    Complex worst_lambda{};
    bool converged = true;
};

struct OrthoOptions {
    OrthoMethod method = OrthoMethod::derivative;
    double tol = 1e-8;
    /// Initial angles: semiconvex search for the derivative method, ray
    /// directions for the direct method.
    std::size_t derivative_grid = 32;
    std::size_t direct_grid = 1024;
};

namespace detail {

inline void require_epsilon(double eps, const char* who) {
    if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument(std::string(who) + ": epsilon must lie in [0, 1)");
}

inline double epsilon_from_inf(double inf, double wt, double ws) {
    if (!(wt > 0.0 && ws > 0.0)) return 0.0;
    const double e = std::max(0.0, -inf / (wt * ws));
    return e >= 1.0 - 1e-6 ? 1.0 : e;
}

struct RayMin {
    double r = 0.0;
    double value = 0.0;
};

/// Minimum of a convex g on [0, r_max] with g(0) = 0 and g(r) >= slope0 r.
template <class G>
RayMin minimize_convex_ray(G&& g, double slope0, double r_max, double tol, std::size_t max_evals = 160) {
    std::vector<double> r{0.0};
    std::vector<double> v{0.0};
    for (int k = 8; k >= 0; --k) {
        const double x = std::ldexp(r_max, -k);
        r.push_back(x);
        v.push_back(g(x));
    }
    auto cell_bound = [&](std::size_t i) {
        const double x1 = r[i];
        const double x2 = r[i + 1];
        const std::size_t m = r.size();
        auto lines = [&](double x) {
            double y = slope0 * x;
            if (i >= 1) y = std::max(y, v[i] + (v[i] - v[i - 1]) / (r[i] - r[i - 1]) * (x - r[i]));
            if (i + 2 < m) y = std::max(y, v[i + 1] + (v[i + 2] - v[i + 1]) / (r[i + 2] - r[i + 1]) * (x - r[i + 1]));
            return y;
        };
        double best = std::min(lines(x1), lines(x2));
        // the max of lines is convex, so its minimum sits at an end or a kink
        std::vector<std::pair<double, double>> ls{{slope0, 0.0}};
        if (i >= 1) {
            const double s = (v[i] - v[i - 1]) / (r[i] - r[i - 1]);
            ls.emplace_back(s, v[i] - s * r[i]);
        }
        if (i + 2 < m) {
            const double s = (v[i + 2] - v[i + 1]) / (r[i + 2] - r[i + 1]);
            ls.emplace_back(s, v[i + 1] - s * r[i + 1]);
        }
        for (std::size_t a = 0; a < ls.size(); ++a) {
            for (std::size_t b = a + 1; b < ls.size(); ++b) {
                if (ls[a].first == ls[b].first) continue;
                const double x = (ls[b].second - ls[a].second) / (ls[a].first - ls[b].first);
                if (x > x1 && x < x2) best = std::min(best, lines(x));
            }
        }
        return best;
    };

    std::size_t evals = r.size() - 1;
    while (true) {
        std::size_t best_k = 0;
        for (std::size_t k = 1; k < v.size(); ++k) {
            if (v[k] < v[best_k]) best_k = k;
        }
        std::size_t cell = 0;
        double low = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < r.size(); ++i) {
            const double b = cell_bound(i);
            if (b < low) {
                low = b;
                cell = i;
            }
        }
        if (low >= v[best_k] - tol || evals >= max_evals || r[cell + 1] - r[cell] <= 1e-14 * r_max) {
            return {r[best_k], v[best_k]};
        }
        const double mid = 0.5 * (r[cell] + r[cell + 1]);
        r.insert(r.begin() + static_cast<std::ptrdiff_t>(cell + 1), mid);
        v.insert(v.begin() + static_cast<std::ptrdiff_t>(cell + 1), g(mid));
        ++evals;
    }
}

/// Ray search shared by both direct deciders. `slope0(theta)` must satisfy
/// G(r e^{i theta}) >= slope0 r for all r >= 0.
template <class Slope, class Gap>
OrthoReport direct_search(Slope&& slope0, Gap&& gap, double r_max, std::size_t grid, double tol) {
    struct Candidate {
        double theta;
        double slope;
    };
    std::vector<Candidate> candidates;
    double steepest = std::numeric_limits<double>::infinity();
    double steepest_theta = 0.0;
    auto consider = [&](double theta, double s) {
        if (s < steepest) {
            steepest = s;
            steepest_theta = theta;
        }
        if (s * r_max < -tol) candidates.push_back({theta, s});
    };
    const double step = kTwoPi / static_cast<double>(grid);
    std::vector<double> ring(grid);
    for (std::size_t k = 0; k < grid; ++k) {
        ring[k] = slope0(step * static_cast<double>(k));
        consider(step * static_cast<double>(k), ring[k]);
    }
    // a narrow negative arc can fall between grid angles; polish each local minimum
    for (std::size_t k = 0; k < grid; ++k) {
        const double prev = ring[(k + grid - 1) % grid];
        const double next = ring[(k + 1) % grid];
        if (ring[k] > prev || ring[k] > next) continue;
        const double c = step * static_cast<double>(k);
        const auto [theta, s] = golden_minimize(slope0, c - step, c + step, 1e-9);
        if (s < ring[k]) consider(wrap_angle(theta), s);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.slope < b.slope; });

    OrthoReport rep;
    rep.method = OrthoMethod::direct;
    rep.worst_theta = steepest_theta;
    rep.margin = 0.0;
    for (const auto& c : candidates) {
        const auto m = minimize_convex_ray([&](double r) { return gap(c.theta, r); }, c.slope, r_max,
                                           0.1 * tol);
        if (m.value < rep.margin) {
            rep.margin = m.value;
            rep.worst_theta = c.theta;
            rep.worst_lambda = std::polar(m.r, c.theta);
        }
        if (rep.margin < -tol) break;
    }
    rep.orthogonal = rep.margin >= -tol;
    return rep;
}

inline OrthoReport omega_direct(const CMatrix& t, const CMatrix& s, double eps, std::size_t grid) {
    const RadiusModel model(t);
    const double wt = model.omega();
    const double ws = numerical_radius(s, 1e-13).omega;
    const double ws_upper = radius_upper(s);
    const double coeff = 2.0 * eps * wt * ws;
    const double r_max = 2.0 * wt / ws * 1.01;

    const PeakMinorant minorant(model, s);
    auto slope0 = [&](double theta) { return 2.0 * wt * minorant.slope(theta) + coeff; };
    auto gap = [&](double theta, double r) {
        const double inc = model.increment(std::polar(r, theta) * s, r * ws_upper);
        return inc * (2.0 * wt + inc) + coeff * r;
    };
    auto rep = direct_search(slope0, gap, r_max, grid, kDirectRelTol * wt * wt);
    rep.epsilon = eps;
    rep.threshold = -eps * wt * ws;
    return rep;
}

}  // namespace detail

/// Decides T eps-orthogonal to S in the numerical-radius sense.
inline OrthoReport is_omega_orthogonal(const CMatrix& t, const CMatrix& s, double eps, const OrthoOptions& opts) {
    detail::require_epsilon(eps, "is_omega_orthogonal");
    if (t.size() != s.size()) throw DimensionError("is_omega_orthogonal: T and S must have equal size");
    if (t.is_zero() || s.is_zero()) {
        OrthoReport rep;
        rep.epsilon = eps;
        rep.method = opts.method;
        if (opts.method == OrthoMethod::derivative) {
            rep.inf_derivative = 0.0;
            rep.epsilon_star = 0.0;
        }
        return rep;
    }
    if (opts.method == OrthoMethod::direct) return detail::omega_direct(t, s, eps, opts.direct_grid);

    const detail::QuotientModel pair(t, s);
    const double wt = pair.omega_t();
    const double ws = numerical_radius(s, 1e-13).omega;
    const auto inf = inf_derivative(t, s, InfDerivativeOptions{opts.tol, opts.derivative_grid});
    OrthoReport rep;
    rep.method = OrthoMethod::derivative;
    rep.epsilon = eps;
    rep.threshold = -eps * wt * ws;
    rep.inf_derivative = inf.value;
    rep.worst_theta = inf.worst_theta;
    rep.margin = inf.value - rep.threshold;
    rep.orthogonal = rep.margin >= -kVerdictTol;
    rep.epsilon_star = detail::epsilon_from_inf(inf.value, wt, ws);
    rep.converged = inf.converged;
    return rep;
}

inline OrthoReport is_omega_orthogonal(const CMatrix& t, const CMatrix& s, double eps,
                                       OrthoMethod method = OrthoMethod::derivative) {
    OrthoOptions opts;
    opts.method = method;
    return is_omega_orthogonal(t, s, eps, opts);
}

/// Smallest eps in [0, 1] for which T is eps-orthogonal to S; 1 means none in [0, 1).
inline double min_epsilon(const CMatrix& t, const CMatrix& s, double tol = 1e-8) {
    if (t.size() != s.size()) throw DimensionError("min_epsilon: T and S must have equal size");
    if (t.is_zero() || s.is_zero()) return 0.0;
    const double wt = numerical_radius(t, 1e-13).omega;
    const double ws = numerical_radius(s, 1e-13).omega;
    return detail::epsilon_from_inf(inf_derivative(t, s, tol).value, wt, ws);
}

/// Birkhoff-James eps-orthogonality for the spectral norm:
/// ||T + lambda S||^2 >= ||T||^2 - 2 eps ||T|| ||lambda S|| for all lambda.
inline OrthoReport bj_orthogonality(const CMatrix& t, const CMatrix& s, double eps, std::size_t grid = 1024) {
    detail::require_epsilon(eps, "is_bj_orthogonal");
    if (t.size() != s.size()) throw DimensionError("is_bj_orthogonal: T and S must have equal size");
    const double ns = spectral_norm(s);
    OrthoReport rep;
    rep.method = OrthoMethod::direct;
    rep.epsilon = eps;
    if (ns == 0.0) return rep;
    const auto gram = herm_eig(adjoint(t) * t, true);
    const double nt = std::sqrt(std::max(0.0, gram.values.back()));
    if (nt == 0.0) return rep;
    const double coeff = 2.0 * eps * nt * ns;
    rep.threshold = -eps * nt * ns;

    // For a unit right singular vector v of ||T|| and u = T v / ||T||,
    // ||T + lambda S|| >= ||T|| + Re(lambda <S v, u>).
    const std::size_t n = t.size();
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < n; ++k) {
        if (gram.values[k] >= gram.values.back() * (1.0 - 1e-12)) cols.push_back(k);
    }
    const std::size_t m = cols.size();
    std::vector<Complex> kd(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        const auto ua = t.apply(gram.vector(cols[a]));
        for (std::size_t b = 0; b < m; ++b) {
            kd[a * m + b] = inner(s.apply(gram.vector(cols[b])), ua) / nt;
        }
    }
    const detail::Compression comp{CMatrix(m, std::move(kd))};
    auto slope0 = [&](double theta) { return 2.0 * nt * comp.slope(theta) + coeff; };
    auto gap = [&](double theta, double r) {
        const double v = spectral_norm(t + std::polar(r, theta) * s);
        return v * v - nt * nt + coeff * r;
    };
    auto found = detail::direct_search(slope0, gap, 2.0 * nt / ns * 1.01, grid, kVerdictTol);
    found.epsilon = eps;
    found.threshold = rep.threshold;
    return found;
}

inline bool is_bj_orthogonal(const CMatrix& t, const CMatrix& s, double eps) {
    return bj_orthogonality(t, s, eps).orthogonal;
}

}  // namespace numrad
