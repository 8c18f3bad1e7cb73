#pragma once

/**
 * @file support_scan.hpp
 * @brief Certified maximization of the support function h(phi) = lambda_max(H_phi(T)).
 *
 * h is the support function of the convex set W(T). Between two sampled
 * angles the support lines at both ends cut out a wedge that contains W(T)'s
 * contribution, which gives an upper bound that is quadratically tight in
 * the cell width. A Lipschitz bound with constant ||T|| is kept as a fallback.
 * Cells are refined best-first until the largest bound is within tol of the
 * best sample.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "complex_matrix.hpp"
#include "hermitian_eigen.hpp"

namespace numrad::detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2pi).
inline double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

/// Signed difference a - b reduced to (-pi, pi].
inline double angle_diff(double a, double b) {
    double d = std::remainder(a - b, kTwoPi);
    if (d <= -std::numbers::pi) d += kTwoPi;
    return d;
}

/// Re = (T + T^*)/2 and Im = i (T - T^*)/2, so H_phi = cos(phi) Re + sin(phi) Im.
struct HermitianParts {
    std::size_t n = 0;
    std::vector<Complex> re;
    std::vector<Complex> im;

    HermitianParts() = default;

    explicit HermitianParts(const CMatrix& t) : n(t.size()), re(n * n), im(n * n) {
        const Complex iu(0.0, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            re[i * n + i] = t(i, i).real();
            im[i * n + i] = -t(i, i).imag();
            for (std::size_t j = i + 1; j < n; ++j) {
                const Complex a = 0.5 * (t(i, j) + std::conj(t(j, i)));
                const Complex b = 0.5 * iu * (t(i, j) - std::conj(t(j, i)));
                re[i * n + j] = a;
                re[j * n + i] = std::conj(a);
                im[i * n + j] = b;
                im[j * n + i] = std::conj(b);
            }
        }
    }

    void combine(double c, double s, Complex* out) const {
        for (std::size_t k = 0; k < n * n; ++k) out[k] = c * re[k] + s * im[k];
    }

    void assemble(double phi, Complex* out) const { combine(std::cos(phi), std::sin(phi), out); }

    /// <(c Re + s Im) x, x> for a column x stored contiguously.
    double form(double c, double s, const Complex* x) const {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex row{};
            for (std::size_t j = 0; j < n; ++j) row += (c * re[i * n + j] + s * im[i * n + j]) * x[j];
            total += (std::conj(x[i]) * row).real();
        }
        return total;
    }
};

/// Top eigenpair of H_phi together with the slope h'(phi) = <H'_phi x, x>.
struct SupportPoint {
    double angle = 0.0;
    double value = 0.0;
    double slope = 0.0;
    std::vector<Complex> vector;
};

class SupportFunction {
public:
    explicit SupportFunction(const CMatrix& t)
        : t_(t), parts_(t), n_(t.size()), ws_(t.size()), a_(n_ * n_), v_(n_ * n_) {
        lipschitz_ = spectral_norm(t);
        pad_ = 64.0 * static_cast<double>(n_) * std::numeric_limits<double>::epsilon()
             * std::max(t.frobenius_norm(), std::numeric_limits<double>::min());
    }

    double operator()(double phi) {
        ++evaluations_;
        parts_.assemble(phi, ws_.data());
        return ws_.largest();
    }

    /// Smallest and largest eigenvalue of H_phi.
    std::pair<double, double> extremes(double phi) {
        ++evaluations_;
        parts_.assemble(phi, ws_.data());
        return ws_.extremes();
    }

    SupportPoint point(double phi) {
        ++evaluations_;
        parts_.assemble(phi, a_.data());
        jacobi_diagonalize(a_.data(), n_, v_.data());
        std::size_t top = 0;
        for (std::size_t i = 1; i < n_; ++i) {
            if (a_[i * n_ + i].real() > a_[top * n_ + top].real()) top = i;
        }
        SupportPoint p;
        p.angle = phi;
        p.value = a_[top * n_ + top].real();
        p.vector.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) p.vector[i] = v_[i * n_ + top];
        p.slope = parts_.form(-std::sin(phi), std::cos(phi), p.vector.data());
        return p;
    }

    const CMatrix& op() const noexcept { return t_; }
    const HermitianParts& parts() const noexcept { return parts_; }
    double lipschitz() const noexcept { return lipschitz_; }
    /// Absolute slack added to every certified upper bound for rounding.
    double pad() const noexcept { return pad_; }
    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    CMatrix t_;
    HermitianParts parts_;
    std::size_t n_;
    JacobiWorkspace ws_;
    std::vector<Complex> a_;
    std::vector<Complex> v_;
    double lipschitz_ = 0.0;
    double pad_ = 0.0;
    std::size_t evaluations_ = 0;
};

/// Upper bound for a support function on [a0, a1] (a1 - a0 < pi) from its
/// values at the endpoints.
inline double wedge_bound(double a0, double h0, double a1, double h1, double lipschitz) {
    const double d = 0.5 * (a1 - a0);
    const double hi = std::max(h0, h1);
    if (!(d > 0.0)) return hi;
    const double u = (h0 + h1) / (2.0 * std::cos(d));
    const double v = (h0 - h1) / (2.0 * std::sin(d));
    const double stationary = -std::atan2(v, u);
    const double wedge = std::abs(stationary) <= d ? std::hypot(u, v) : hi;
    const double lip = 0.5 * (h0 + h1) + lipschitz * d;
    return std::max(hi, std::min(wedge, lip));
}

struct SupportSample {
    double angle = 0.0;
    double value = 0.0;
};

struct SupportCell {
    double a0 = 0.0;
    double h0 = 0.0;
    double a1 = 0.0;
    double h1 = 0.0;
    double bound = 0.0;
};

inline bool cell_heap_order(const SupportCell& x, const SupportCell& y) { return x.bound < y.bound; }

inline constexpr double kMinCellWidth = 1e-13;
inline constexpr std::size_t kMaxScanEvaluations = 200000;

/// Kittaneh's bound w(T) <= || |T| + |T^*| || / 2, padded for rounding.
///
/// It is attained by normal matrices and by every T with T^2 = 0, whose
/// support functions are flat at the top and hard to certify by subdivision.
/// |T| and |T^*| come from the Hermitian dilation [0 T; T^* 0], whose
/// eigenpairs are (+-sigma_k, (u_k; +-v_k) / sqrt 2), so small singular values
/// carry absolute rather than square-root error.
inline double modulus_bound(const CMatrix& t) {
    const std::size_t n = t.size();
    if (2 * n > kMaxDimension) return std::numeric_limits<double>::infinity();
    std::vector<Complex> d(4 * n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            d[i * 2 * n + (n + j)] = t(i, j);
            d[(n + j) * 2 * n + i] = std::conj(t(i, j));
        }
    }
    const auto eig = herm_eig(CMatrix(2 * n, std::move(d)), true);
    std::vector<Complex> m(n * n);
    for (std::size_t k = n; k < 2 * n; ++k) {
        const double sigma = std::max(0.0, eig.values[k]);
        const Complex* w = eig.vectors.data() + k * 2 * n;
        // |T| + |T^*| gains sigma (u u^* + v v^*) = 2 sigma (w_top w_top^* + w_bot w_bot^*)
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m[i * n + j] += 2.0 * sigma * (w[i] * std::conj(w[j]) + w[n + i] * std::conj(w[n + j]));
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        m[i * n + i] = m[i * n + i].real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex h = 0.5 * (m[i * n + j] + std::conj(m[j * n + i]));
            m[i * n + j] = h;
            m[j * n + i] = std::conj(h);
        }
    }
    const double top = herm_eig(CMatrix(n, std::move(m)), false).values.back();
    const double slack = 16.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * t.frobenius_norm();
    return 0.5 * top * (1.0 + 1e-13) + slack;
}

/// Best-first branch and bound over the support angle.
class SupportScan {
public:
    /// Uniform start on `grid` angles 2 pi k / grid.
    /// `ceiling` is any certified upper bound on max h; it caps every cell.
    static SupportScan uniform(SupportFunction& h, std::size_t grid,
                               double ceiling = std::numeric_limits<double>::infinity()) {
        grid = std::max<std::size_t>(grid, 3);
        SupportScan scan(h);
        scan.ceiling_ = ceiling;
        std::vector<double> values(grid);
        for (std::size_t k = 0; k < grid; ++k) {
            const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(grid);
            values[k] = h(a);
            scan.record(a, values[k]);
        }
        for (std::size_t k = 0; k < grid; ++k) {
            const double a0 = kTwoPi * static_cast<double>(k) / static_cast<double>(grid);
            const double a1 = kTwoPi * static_cast<double>(k + 1) / static_cast<double>(grid);
            scan.push(a0, values[k], a1, values[(k + 1) % grid]);
        }
        return scan;
    }

    /// Start for h_new = support function of T + E from the final cells of the
    /// scan of T, where `shift` bounds |h_new - h_T| (any bound >= omega(E)).
    /// Cells whose prior bound cannot reach the current best are dropped.
    static SupportScan seeded(SupportFunction& h, const SupportScan& base, double shift) {
        SupportScan scan(h);
        scan.record(base.best_.angle, h(base.best_.angle));

        std::vector<const SupportCell*> live;
        live.reserve(base.heap_.size() + base.settled_.size());
        for (const auto& c : base.heap_) live.push_back(&c);
        for (const auto& c : base.settled_) live.push_back(&c);
        std::sort(live.begin(), live.end(), [](const SupportCell* x, const SupportCell* y) {
            return x->bound > y->bound;
        });

        std::unordered_map<double, double> cache;
        cache.emplace(base.best_.angle, scan.best_.value);
        auto eval = [&](double a) {
            auto it = cache.find(a);
            if (it != cache.end()) return it->second;
            const double v = h(a);
            cache.emplace(a, v);
            scan.record(a, v);
            return v;
        };

        std::vector<std::pair<const SupportCell*, double>> kept;
        for (const SupportCell* c : live) {
            const double prior = c->bound + shift + base.pad_ + scan.pad_;
            if (prior < scan.best_.value) break;
            const double h0 = eval(c->a0);
            const double h1 = eval(c->a1);
            kept.emplace_back(c, prior);
            (void)h0;
            (void)h1;
        }
        for (const auto& [c, prior] : kept) {
            if (prior < scan.best_.value) continue;
            const double h0 = cache.at(c->a0);
            const double h1 = cache.at(c->a1);
            scan.push(c->a0, h0, c->a1, h1, prior);
        }
        return scan;
    }

    /// Refines until upper() - lower() <= tol, or until cells are too narrow
    /// to split. Returns false if the evaluation budget ran out first.
    bool refine(SupportFunction& h, double tol, std::size_t budget = kMaxScanEvaluations) {
        tol = std::max(tol, 4.0 * pad_);
        std::size_t used = 0;
        while (!heap_.empty()) {
            const SupportCell& top = heap_.front();
            if (top.bound - best_.value <= tol - pad_) return true;
            std::pop_heap(heap_.begin(), heap_.end(), cell_heap_order);
            SupportCell c = heap_.back();
            heap_.pop_back();
            if (c.a1 - c.a0 < kMinCellWidth) {
                settled_.push_back(c);
                continue;
            }
            if (++used > budget) {
                heap_.push_back(c);
                std::push_heap(heap_.begin(), heap_.end(), cell_heap_order);
                return false;
            }
            const double mid = 0.5 * (c.a0 + c.a1);
            const double hm = h(mid);
            record(mid, hm);
            push(c.a0, c.h0, mid, hm, c.bound);
            push(mid, hm, c.a1, c.h1, c.bound);
        }
        return true;
    }

    double lower() const noexcept { return best_.value; }

    double upper() const noexcept {
        double u = best_.value;
        if (!heap_.empty()) u = std::max(u, heap_.front().bound);
        for (const auto& c : settled_) u = std::max(u, c.bound);
        return u + pad_;
    }

    const SupportSample& best() const noexcept { return best_; }

    /// All samples sorted by angle in [0, 2pi), duplicates removed.
    std::vector<SupportSample> sorted_samples() const {
        std::vector<SupportSample> s = samples_;
        for (auto& x : s) x.angle = wrap_angle(x.angle);
        std::sort(s.begin(), s.end(), [](const SupportSample& x, const SupportSample& y) {
            return x.angle < y.angle;
        });
        s.erase(std::unique(s.begin(), s.end(),
                            [](const SupportSample& x, const SupportSample& y) { return x.angle == y.angle; }),
                s.end());
        return s;
    }

    /// Every live cell: all angles outside them are certified below lower().
    std::vector<SupportCell> cells() const {
        std::vector<SupportCell> all = heap_;
        all.insert(all.end(), settled_.begin(), settled_.end());
        return all;
    }

private:
    explicit SupportScan(const SupportFunction& h) : pad_(h.pad()), lipschitz_(h.lipschitz()) {
        best_.value = -std::numeric_limits<double>::infinity();
    }

    void record(double a, double v) {
        samples_.push_back({a, v});
        if (v > best_.value) best_ = {a, v};
    }

    void push(double a0, double h0, double a1, double h1,
              double cap = std::numeric_limits<double>::infinity()) {
        const double b = std::min({cap, ceiling_, wedge_bound(a0, h0, a1, h1, lipschitz_)});
        heap_.push_back({a0, h0, a1, h1, std::max(b, std::max(h0, h1))});
        std::push_heap(heap_.begin(), heap_.end(), cell_heap_order);
    }

    std::vector<SupportCell> heap_;
    std::vector<SupportCell> settled_;
    std::vector<SupportSample> samples_;
    SupportSample best_;
    double pad_ = 0.0;
    double lipschitz_ = 0.0;
    double ceiling_ = std::numeric_limits<double>::infinity();
};

/// Local maxima of the sampled support function within `window` of the best
/// sample, each polished by root-finding on the slope h'(phi).
inline std::vector<SupportPoint> refine_peaks(SupportFunction& h, const SupportScan& scan, double window,
                                              std::size_t max_peaks = 16) {
    const auto s = scan.sorted_samples();
    const std::size_t m = s.size();
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < m; ++i) {
        if (s[i].value < scan.lower() - window) continue;
        const auto& prev = s[(i + m - 1) % m];
        const auto& next = s[(i + 1) % m];
        if (m >= 3 && (s[i].value < prev.value || s[i].value < next.value)) continue;
        candidates.push_back(i);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t x, std::size_t y) { return s[x].value > s[y].value; });
    if (candidates.size() > max_peaks) candidates.resize(max_peaks);

    std::vector<SupportPoint> peaks;
    for (std::size_t i : candidates) {
        const double centre = s[i].angle;
        double left = m >= 2 ? centre + angle_diff(s[(i + m - 1) % m].angle, centre) : centre - 0.1;
        double right = m >= 2 ? centre + angle_diff(s[(i + 1) % m].angle, centre) : centre + 0.1;
        if (!(left < centre)) left = centre - 0.1;
        if (!(right > centre)) right = centre + 0.1;
        left = std::max(left, centre - 0.5);
        right = std::min(right, centre + 0.5);

        SupportPoint best = h.point(centre);
        SupportPoint lo = h.point(left);
        SupportPoint hi = h.point(right);
        double a = left;
        double b = right;
        double fa = lo.slope;
        double fb = hi.slope;
        if (best.slope > 0.0) {
            a = centre;
            fa = best.slope;
        } else if (best.slope < 0.0) {
            b = centre;
            fb = best.slope;
        } else {
            fa = fb = 0.0;
        }
        if (fa > 0.0 && fb < 0.0) {
            boost::uintmax_t iters = 80;
            auto slope = [&](double phi) { return h.point(phi).slope; };
            try {
                const auto bracket = boost::math::tools::toms748_solve(
                    slope, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
                SupportPoint root = h.point(0.5 * (bracket.first + bracket.second));
                if (root.value > best.value - h.pad()) best = std::move(root);
            } catch (const std::exception&) {
            }
        }
        for (SupportPoint* p : {&lo, &hi}) {
            if (p->value > best.value + h.pad()) best = std::move(*p);
        }
        best.angle = wrap_angle(best.angle);
        peaks.push_back(std::move(best));
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const SupportPoint& x, const SupportPoint& y) { return x.value > y.value; });
    std::vector<SupportPoint> unique;
    for (auto& p : peaks) {
        bool dup = false;
        for (const auto& q : unique) dup = dup || std::abs(angle_diff(p.angle, q.angle)) < 1e-12;
        if (!dup) unique.push_back(std::move(p));
    }
    return unique;
}

}  // namespace numrad::detail
