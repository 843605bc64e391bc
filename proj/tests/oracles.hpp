#pragma once

// Independent reference computations used by the test suites. These stay on
// plain adaptive quadrature and series formulas so they share nothing with the
// panel machinery they check.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

namespace detail {

template <typename F>
Complex gauss15(const F& f, double a, double b) {
    // 15-point Gauss-Legendre nodes/weights on (-1,1).
    static const double X[15] = {
        -0.9879925180204854, -0.9372733924007060, -0.8482065834104272, -0.7244177313601700,
        -0.5709721726085388, -0.3941513470775634, -0.2011940939974345, 0.0,
        0.2011940939974345,  0.3941513470775634,  0.5709721726085388,  0.7244177313601700,
        0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
    static const double W[15] = {
        0.0307532419961173, 0.0703660474881081, 0.1071592204671719, 0.1395706779261543,
        0.1662692058169939, 0.1861610000155622, 0.1984314853271116, 0.2025782419255613,
        0.1984314853271116, 0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
        0.1071592204671719, 0.0703660474881081, 0.0307532419961173};
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Complex s = 0.0;
    for (int i = 0; i < 15; ++i) s += W[i] * f(c + h * X[i]);
    return h * s;
}

template <typename F>
Complex adapt(const F& f, double a, double b, double tol, int depth) {
    const Complex whole = gauss15(f, a, b);
    const double m = 0.5 * (a + b);
    const Complex half = gauss15(f, a, m) + gauss15(f, m, b);
    const double floor_tol = std::max(tol, 1e-15 * std::abs(half) + 1e-300);
    if (std::abs(whole - half) < floor_tol || depth > 30) return half;
    return adapt(f, a, m, 0.7 * tol, depth + 1) + adapt(f, m, b, 0.7 * tol, depth + 1);
}

}  // namespace detail

/// Adaptive quadrature of a complex-valued integrand.
template <typename F>
Complex integrate(const F& f, double a, double b, double tol = 1e-13) {
    return detail::adapt(f, a, b, tol, 0);
}

/// Principal value of int f(s)/(s - c) ds over [a, b] with a < c < b.
template <typename F>
Complex pv_integral(const F& f, double a, double b, double c, double tol = 1e-12) {
    const double d = std::min(c - a, b - c);
    // Symmetric window: int_0^d (f(c+u) - f(c-u))/u du, then the regular rest.
    auto sym = [&](double u) { return (f(c + u) - f(c - u)) / u; };
    Complex s = detail::adapt(sym, 1e-300, d, tol, 0);
    // The tiny left stub contributes f'(c)*2*eps -> 0; start just off zero and
    // patch with the analytic limit over [0, 1e-300] ~ 0.
    if (a < c - d) s += integrate([&](double x) { return f(x) / (x - c); }, a, c - d, tol);
    if (b > c + d) s += integrate([&](double x) { return f(x) / (x - c); }, c + d, b, tol);
    return s;
}

/// (1/2 pi i) int_a^b f(s)/(s - x - i eps) ds with the near-singularity
/// subtracted analytically, so the adaptive rule never has to resolve eps.
template <typename F>
Complex cauchy_offset(const F& f, double a, double b, double x, double eps,
                      double tol = 1e-13) {
    const Complex z(x, eps);
    const Complex fx = f(x);
    const Complex smooth =
        integrate([&](double s) { return (f(s) - fx) / (s - z); }, a, b, tol);
    const Complex logs = std::log(Complex(b) - z) - std::log(Complex(a) - z);
    return (smooth + fx * logs) / Complex(0.0, 2.0 * M_PI);
}

/// Richardson extrapolation of g(eps) as eps -> 0+ along eps0 * 2^{-m}.
template <typename G>
Complex richardson_limit(const G& g, double eps0 = 0.1, int levels = 7) {
    std::vector<double> e(levels);
    std::vector<Complex> v(levels);
    for (int m = 0; m < levels; ++m) {
        e[m] = eps0 * std::pow(0.5, m);
        v[m] = g(e[m]);
    }
    for (int k = 1; k < levels; ++k)
        for (int i = 0; i + k < levels; ++i)
            v[i] = (e[i + k] * v[i] - e[i] * v[i + 1]) / (e[i + k] - e[i]);
    return v[0];
}

/// arg Gamma(i y) from the classical product expansion:
/// arg Gamma(1+iy) = -gamma y + sum_k (y/k - atan(y/k)), Gamma(iy) = Gamma(1+iy)/(iy).
inline double arg_gamma_imag_axis(double y, int terms = 200000) {
    if (y == 0.0) throw std::invalid_argument("arg_gamma_imag_axis: y must be nonzero");
    const double euler = 0.57721566490153286060651209008240243;
    double s = -euler * y;
    for (int k = 1; k <= terms; ++k) s += y / k - std::atan(y / (double)k);
    // Tail: sum_{k>K} (y/k - atan(y/k)) ~ sum y^3/(3k^3) - y^5/(5 k^5).
    const double K = terms;
    s += y * y * y / (6.0 * K * K) - std::pow(y, 5) / (20.0 * K * K * K * K);
    return s - 0.5 * M_PI * (y > 0.0 ? 1.0 : -1.0);
}

/// Least-squares slope of (log x, log y).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = (int)x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
