#pragma once

#include <memory>
#include <vector>

#include "oscrh/contour.hpp"
#include "oscrh/mat2.hpp"

namespace oscrh {

/// Per-node Mat2 values attached to a contour.
struct MatrixField {
    std::shared_ptr<const ContourData> contour;
    std::vector<Mat2> values;

    MatrixField() = default;
    explicit MatrixField(std::shared_ptr<const ContourData> c)
        : contour(std::move(c)), values(contour->size()) {}

    int size() const { return (int)values.size(); }
    Mat2& operator[](int i) { return values[i]; }
    const Mat2& operator[](int i) const { return values[i]; }

    double sup_norm() const {
        double m = 0.0;
        for (const Mat2& v : values) m = std::max(m, v.abs());
        return m;
    }
    /// Contour L2 norm using arc-length weights.
    double l2_norm() const {
        double s = 0.0;
        for (int i = 0; i < size(); ++i) s += contour->arc[i] * values[i].abs() * values[i].abs();
        return std::sqrt(s);
    }
    /// Contour Lp norm (p finite) using arc-length weights.
    double lp_norm(double p) const {
        double s = 0.0;
        for (int i = 0; i < size(); ++i) s += contour->arc[i] * std::pow(values[i].abs(), p);
        return std::pow(s, 1.0 / p);
    }

    MatrixField& operator+=(const MatrixField& o) {
        for (int i = 0; i < size(); ++i) values[i] += o.values[i];
        return *this;
    }
    MatrixField& operator-=(const MatrixField& o) {
        for (int i = 0; i < size(); ++i) values[i] -= o.values[i];
        return *this;
    }
};

inline MatrixField operator+(MatrixField a, const MatrixField& b) { return a += b; }
inline MatrixField operator-(MatrixField a, const MatrixField& b) { return a -= b; }

/// Scalar complex field on a contour.
struct ComplexField {
    std::shared_ptr<const ContourData> contour;
    std::vector<Complex> values;

    ComplexField() = default;
    explicit ComplexField(std::shared_ptr<const ContourData> c)
        : contour(std::move(c)), values(contour->size()) {}

    int size() const { return (int)values.size(); }
    Complex& operator[](int i) { return values[i]; }
    const Complex& operator[](int i) const { return values[i]; }

    double sup_norm() const {
        double m = 0.0;
        for (const Complex& v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

}  // namespace oscrh
