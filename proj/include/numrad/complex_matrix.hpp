#pragma once

/**
 * @file complex_matrix.hpp
 * @brief Dense square complex matrices and unit vectors.
 *
 * CMatrix is an immutable-by-convention value type: every operation returns
 * a fresh matrix, so instances can be shared freely between threads.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace numrad {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDimension = 64;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense n x n complex matrix stored row-major.
class CMatrix {
public:
    CMatrix() = default;

    explicit CMatrix(std::size_t n) : n_(n), data_(n * n, Complex{}) {
        check_dimension(n);
    }

    CMatrix(std::size_t n, std::vector<Complex> row_major) : n_(n), data_(std::move(row_major)) {
        check_dimension(n);
        if (data_.size() != n * n) {
            throw DimensionError("CMatrix: expected " + std::to_string(n * n) + " entries, got "
                                 + std::to_string(data_.size()));
        }
        for (const auto& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::invalid_argument("CMatrix: non-finite entry");
            }
        }
    }

    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        n_ = rows.size();
        check_dimension(n_);
        data_.reserve(n_ * n_);
        for (const auto& row : rows) {
            if (row.size() != n_) throw DimensionError("CMatrix: rows must have length n");
            data_.insert(data_.end(), row.begin(), row.end());
        }
        for (const auto& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::invalid_argument("CMatrix: non-finite entry");
            }
        }
    }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
        return m;
    }

    static CMatrix diagonal(std::span<const Complex> d) {
        CMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m.data_[i * d.size() + i] = d[i];
        return m;
    }

    static CMatrix diagonal(std::initializer_list<Complex> d) {
        return diagonal(std::span<const Complex>(d.begin(), d.size()));
    }

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    Complex operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<const Complex> data() const noexcept { return data_; }

    bool is_zero() const noexcept {
        for (const auto& z : data_) {
            if (z != Complex{}) return false;
        }
        return true;
    }

    double frobenius_norm() const noexcept {
        double s = 0.0;
        for (const auto& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    /// Largest absolute deviation from Hermitian symmetry.
    double hermitian_defect() const noexcept {
        double worst = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i; j < n_; ++j) {
                worst = std::max(worst, std::abs(data_[i * n_ + j] - std::conj(data_[j * n_ + i])));
            }
        }
        return worst;
    }

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

    friend CMatrix operator+(const CMatrix& a, const CMatrix& b) {
        require_same_size(a, b);
        CMatrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
        return r;
    }

    friend CMatrix operator-(const CMatrix& a, const CMatrix& b) {
        require_same_size(a, b);
        CMatrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
        return r;
    }

    friend CMatrix operator-(const CMatrix& a) { return Complex(-1.0) * a; }

    friend CMatrix operator*(Complex alpha, const CMatrix& a) {
        CMatrix r = a;
        for (auto& z : r.data_) z *= alpha;
        return r;
    }

    friend CMatrix operator*(const CMatrix& a, Complex alpha) { return alpha * a; }
    friend CMatrix operator*(double alpha, const CMatrix& a) { return Complex(alpha) * a; }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        require_same_size(a, b);
        const std::size_t n = a.n_;
        CMatrix r(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const Complex aik = a.data_[i * n + k];
                if (aik == Complex{}) continue;
                for (std::size_t j = 0; j < n; ++j) r.data_[i * n + j] += aik * b.data_[k * n + j];
            }
        }
        return r;
    }

    /// y = A x
    std::vector<Complex> apply(std::span<const Complex> x) const {
        if (x.size() != n_) throw DimensionError("CMatrix::apply: dimension mismatch");
        std::vector<Complex> y(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            Complex s{};
            for (std::size_t j = 0; j < n_; ++j) s += data_[i * n_ + j] * x[j];
            y[i] = s;
        }
        return y;
    }

    /// <A x, x> = x^* A x
    Complex quadratic_form(std::span<const Complex> x) const {
        if (x.size() != n_) throw DimensionError("CMatrix::quadratic_form: dimension mismatch");
        Complex s{};
        for (std::size_t i = 0; i < n_; ++i) {
            Complex row{};
            for (std::size_t j = 0; j < n_; ++j) row += data_[i * n_ + j] * x[j];
            s += std::conj(x[i]) * row;
        }
        return s;
    }

private:
    static void check_dimension(std::size_t n) {
        if (n == 0 || n > kMaxDimension) {
            throw DimensionError("CMatrix: dimension must be in [1, " + std::to_string(kMaxDimension)
                                 + "], got " + std::to_string(n));
        }
    }

    static void require_same_size(const CMatrix& a, const CMatrix& b) {
        if (a.n_ != b.n_) throw DimensionError("CMatrix: dimension mismatch");
    }

    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

/// Euclidean inner product <x, y> = sum x_i conj(y_i), linear in the first slot.
inline Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) throw DimensionError("inner: dimension mismatch");
    Complex s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

inline double norm2(std::span<const Complex> x) noexcept {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

/// A vector of Euclidean norm one.
class UnitVector {
public:
    UnitVector() = default;

    /// Normalizes `v`; throws if it is (numerically) zero.
    explicit UnitVector(std::vector<Complex> v) : v_(std::move(v)) {
        const double nrm = norm2(v_);
        if (v_.empty() || !(nrm > 0.0) || !std::isfinite(nrm)) {
            throw std::invalid_argument("UnitVector: cannot normalize a zero vector");
        }
        for (auto& z : v_) z /= nrm;
    }

    static UnitVector basis(std::size_t n, std::size_t k) {
        std::vector<Complex> v(n);
        v.at(k) = 1.0;
        return UnitVector(std::move(v));
    }

    std::size_t size() const noexcept { return v_.size(); }
    Complex operator[](std::size_t i) const { return v_[i]; }
    std::span<const Complex> components() const noexcept { return v_; }

private:
    std::vector<Complex> v_;
};

/// Conjugate transpose.
inline CMatrix adjoint(const CMatrix& t) {
    const std::size_t n = t.size();
    std::vector<Complex> d(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) d[j * n + i] = std::conj(t(i, j));
    }
    return CMatrix(n, std::move(d));
}

/// The rotated Hermitian part H_theta = (e^{i theta} T + e^{-i theta} T^*) / 2.
///
/// <H_theta x, x> = Re(e^{i theta} <T x, x>), so its top eigenvalue is the
/// support function of the numerical range in direction theta.
inline CMatrix hermitian_part(const CMatrix& t, double theta) {
    const std::size_t n = t.size();
    const Complex rot = std::polar(1.0, theta);
    std::vector<Complex> d(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i * n + i] = Complex((rot * t(i, i)).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex h = 0.5 * (rot * t(i, j) + std::conj(rot * t(j, i)));
            d[i * n + j] = h;
            d[j * n + i] = std::conj(h);
        }
    }
    return CMatrix(n, std::move(d));
}

/// Rank-one operator (x (x) y) z = <z, y> x, i.e. M[i][j] = x[i] conj(y[j]).
inline CMatrix rank_one(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) {
        throw DimensionError("rank_one: dimension mismatch (" + std::to_string(x.size()) + " vs "
                             + std::to_string(y.size()) + ")");
    }
    const std::size_t n = x.size();
    std::vector<Complex> d(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = x[i] * std::conj(y[j]);
    }
    return CMatrix(n, std::move(d));
}

}  // namespace numrad
