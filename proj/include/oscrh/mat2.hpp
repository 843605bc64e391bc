#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace oscrh {

using Complex = std::complex<double>;

/// 2x2 complex matrix with value semantics. Entries are a(row,col).
struct Mat2 {
    Complex a11{0.0}, a12{0.0}, a21{0.0}, a22{0.0};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {}; }

    Complex det() const { return a11 * a22 - a12 * a21; }
    Complex trace() const { return a11 + a22; }

    /// |M| = (tr M*M)^{1/2}, the entrywise 2-norm.
    double abs() const {
        return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
    }

    Mat2 off_diagonal() const { return {0.0, a12, a21, 0.0}; }
    Mat2 diagonal() const { return {a11, 0.0, 0.0, a22}; }

    Mat2 inverse() const {
        const Complex d = det();
        if (std::abs(d) <= 1e-14) throw std::domain_error("Mat2::inverse: singular matrix");
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }

    Mat2 conj_transpose() const {
        return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
    }

    Mat2& operator+=(const Mat2& o) {
        a11 += o.a11; a12 += o.a12; a21 += o.a21; a22 += o.a22;
        return *this;
    }
    Mat2& operator-=(const Mat2& o) {
        a11 -= o.a11; a12 -= o.a12; a21 -= o.a21; a22 -= o.a22;
        return *this;
    }
    Mat2& operator*=(Complex s) {
        a11 *= s; a12 *= s; a21 *= s; a22 *= s;
        return *this;
    }
};

inline Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
inline Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
inline Mat2 operator*(Mat2 a, Complex s) { return a *= s; }
inline Mat2 operator*(Complex s, Mat2 a) { return a *= s; }

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

inline double abs_of(const Mat2& m) { return m.abs(); }

}  // namespace oscrh
