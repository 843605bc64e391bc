#pragma once

#include <complex>
#include <vector>

namespace oscrh::legendre {

using Complex = std::complex<double>;

/// Gauss-Legendre rule on (-1,1). Nodes strictly interior, weights positive,
/// exact for polynomials of degree <= 2n-1. Cached per n.
struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};
const Rule& rule(int n);

/// P_0..P_{m-1} evaluated at x.
void eval_P(int m, double x, double* out);

/// Legendre functions of the second kind on the cut, Q_0..Q_{m-1}(x), x in (-1,1).
/// Forward recurrence; both solutions stay O(1) on the cut.
void eval_Q_cut(int m, double x, double* out);

/// Q_0..Q_{count-1}(zeta) for zeta off [-1,1], by Miller's backward recurrence
/// normalized against the closed-form Q_0. Returns the number of values actually
/// computed (may be < m when the tail is below `tail_tol` relative to Q_0; the
/// caller can truncate its coefficient dot product there).
int eval_Q_off(int m, Complex zeta, Complex* out, double tail_tol = 1e-16);

/// Bernstein ellipse parameter rho(zeta) = |zeta + sqrt(zeta^2-1)| >= 1.
double ellipse_rho(Complex zeta);

/// Transform matrix B (m x n) from values at the n Gauss nodes to the Legendre
/// coefficients of the degree-(n-1) interpolant: c = B f. Cached per n (m = n).
const std::vector<double>& value_to_coeff(int n);

}  // namespace oscrh::legendre
