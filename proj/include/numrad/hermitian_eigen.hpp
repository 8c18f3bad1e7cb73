#pragma once

/**
 * @file hermitian_eigen.hpp
 * @brief Cyclic Jacobi eigensolver for complex Hermitian matrices.
 *
 * Each rotation first removes the phase of the pivot a_pq with a diagonal
 * unitary and then applies the classical real Jacobi rotation, so the
 * composite transformation U = D R is unitary and A' = U^* A U.
 */

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "complex_matrix.hpp"

namespace numrad {

/// Eigenvalues ascending; `vectors` holds the matching eigenvectors column-major
/// (column k starts at k * n) when requested.
struct HermitianEigen {
    std::vector<double> values;
    std::vector<Complex> vectors;
    std::size_t n = 0;
    int sweeps = 0;

    std::vector<Complex> vector(std::size_t k) const {
        return {vectors.begin() + static_cast<std::ptrdiff_t>(k * n),
                vectors.begin() + static_cast<std::ptrdiff_t>((k + 1) * n)};
    }
};

struct TopEigenpair {
    double value = 0.0;
    UnitVector vector;
};

namespace detail {

inline constexpr double kJacobiRelTol = 1e-15;
inline constexpr int kJacobiMaxSweeps = 60;

/// Diagonalizes the Hermitian matrix `a` (row-major, n x n) in place. When `v`
/// is non-null it must hold n*n entries and receives the eigenvector matrix
/// (row-major, eigenvector k in column k). Returns the number of sweeps.
inline int jacobi_diagonalize(Complex* a, std::size_t n, Complex* v) {
    if (v != nullptr) {
        std::fill(v, v + n * n, Complex{});
        for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    }
    double total = 0.0;
    for (std::size_t k = 0; k < n * n; ++k) total += std::norm(a[k]);
    const double threshold = kJacobiRelTol * kJacobiRelTol * total;

    int sweep = 0;
    for (; sweep < kJacobiMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(a[p * n + q]);
        }
        if (off <= threshold) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a[p * n + q];
                const double mag2 = std::norm(apq);
                if (mag2 == 0.0) continue;
                const double mag = std::sqrt(mag2);
                const Complex phase = apq / mag;
                const double app = a[p * n + p].real();
                const double aqq = a[q * n + q].real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double atau = std::abs(tau);
                const double t = atau > 1e150 ? 0.5 / tau
                                              : (tau >= 0.0 ? 1.0 : -1.0) / (atau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const double pr = phase.real();
                const double pi = phase.imag();
                // columns p, q: A <- A U
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a[k * n + p];
                    const Complex raw = a[k * n + q];
                    const Complex akq(pr * raw.real() + pi * raw.imag(), pr * raw.imag() - pi * raw.real());
                    a[k * n + p] = Complex(c * akp.real() - s * akq.real(), c * akp.imag() - s * akq.imag());
                    a[k * n + q] = Complex(s * akp.real() + c * akq.real(), s * akp.imag() + c * akq.imag());
                }
                // rows p, q: A <- U^* A
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex bpk = a[p * n + k];
                    const Complex raw = a[q * n + k];
                    const Complex bqk(pr * raw.real() - pi * raw.imag(), pr * raw.imag() + pi * raw.real());
                    a[p * n + k] = Complex(c * bpk.real() - s * bqk.real(), c * bpk.imag() - s * bqk.imag());
                    a[q * n + k] = Complex(s * bpk.real() + c * bqk.real(), s * bpk.imag() + c * bqk.imag());
                }
                a[p * n + p] = app - t * mag;
                a[q * n + q] = aqq + t * mag;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                if (v != nullptr) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex vkp = v[k * n + p];
                        const Complex raw = v[k * n + q];
                        const Complex vkq(pr * raw.real() + pi * raw.imag(), pr * raw.imag() - pi * raw.real());
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    return sweep;
}

inline void require_hermitian(const CMatrix& h, const char* who) {
    const double scale = std::max(1.0, h.frobenius_norm());
    if (h.hermitian_defect() > 1e-12 * scale) {
        throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
    }
}

/// Reusable buffer for the value-only hot path.
class JacobiWorkspace {
public:
    explicit JacobiWorkspace(std::size_t n) : n_(n), a_(n * n) {}

    std::size_t size() const noexcept { return n_; }
    Complex* data() noexcept { return a_.data(); }

    /// Largest eigenvalue of the Hermitian matrix currently stored in data().
    /// Destroys the contents.
    double largest() {
        jacobi_diagonalize(a_.data(), n_, nullptr);
        double top = a_[0].real();
        for (std::size_t i = 1; i < n_; ++i) top = std::max(top, a_[i * n_ + i].real());
        return top;
    }

    /// Smallest and largest eigenvalue. Destroys the contents.
    std::pair<double, double> extremes() {
        jacobi_diagonalize(a_.data(), n_, nullptr);
        double lo = a_[0].real();
        double hi = lo;
        for (std::size_t i = 1; i < n_; ++i) {
            lo = std::min(lo, a_[i * n_ + i].real());
            hi = std::max(hi, a_[i * n_ + i].real());
        }
        return {lo, hi};
    }

private:
    std::size_t n_;
    std::vector<Complex> a_;
};

}  // namespace detail

/// Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.
inline HermitianEigen herm_eig(const CMatrix& h, bool with_vectors = true) {
    detail::require_hermitian(h, "herm_eig");
    const std::size_t n = h.size();
    std::vector<Complex> a(h.data().begin(), h.data().end());
    std::vector<Complex> v(with_vectors ? n * n : 0);
    const int sweeps = detail::jacobi_diagonalize(a.data(), n, with_vectors ? v.data() : nullptr);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a[i * n + i].real() < a[j * n + j].real();
    });

    HermitianEigen out;
    out.n = n;
    out.sweeps = sweeps;
    out.values.reserve(n);
    for (std::size_t k : order) out.values.push_back(a[k * n + k].real());
    if (with_vectors) {
        out.vectors.resize(n * n);
        for (std::size_t col = 0; col < n; ++col) {
            for (std::size_t i = 0; i < n; ++i) out.vectors[col * n + i] = v[i * n + order[col]];
        }
    }
    return out;
}

/// Largest eigenvalue and a unit eigenvector for it.
inline TopEigenpair herm_eig_max(const CMatrix& h) {
    auto eig = herm_eig(h, true);
    const std::size_t top = eig.n - 1;
    return {eig.values[top], UnitVector(eig.vector(top))};
}

/// Largest singular value, sqrt(lambda_max(T^* T)).
inline double spectral_norm(const CMatrix& t) {
    const CMatrix gram = adjoint(t) * t;
    auto eig = herm_eig(gram, false);
    return std::sqrt(std::max(0.0, eig.values.back()));
}

}  // namespace numrad
