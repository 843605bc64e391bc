#include "oscrh/scalar_delta.hpp"
#include <string>

#include <cmath>
#include <stdexcept>

#include "oscrh/legendre.hpp"

namespace oscrh {

namespace {

/// Integral of f over [a,b] with integrable endpoint singularities handled by
/// dyadic panel grading toward the flagged endpoints.
double integrate_graded(const std::function<double(double)>& f, double a, double b, bool sing_a,
                        bool sing_b, int n = 16, int levels = 42) {
    if (b <= a) return 0.0;
    std::vector<double> brk{a};
    const double h = b - a;
    if (sing_a && sing_b) {
        const double mid = 0.5 * (a + b);
        for (int m = levels; m >= 1; --m) brk.push_back(a + 0.5 * h * std::pow(0.5, m));
        brk.push_back(mid);
        for (int m = 1; m <= levels; ++m) brk.push_back(b - 0.5 * h * std::pow(0.5, m));
    } else if (sing_a) {
        for (int m = levels; m >= 1; --m) brk.push_back(a + h * std::pow(0.5, m));
    } else if (sing_b) {
        for (int m = 1; m <= levels; ++m) brk.push_back(b - h * std::pow(0.5, m));
    }
    brk.push_back(b);
    const auto& r = legendre::rule(n);
    double total = 0.0;
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
        const double c = 0.5 * (brk[i] + brk[i + 1]), half = 0.5 * (brk[i + 1] - brk[i]);
        if (half <= 0.0) continue;
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += r.w[k] * f(c + half * r.x[k]);
        total += half * s;
    }
    return total;
}

}  // namespace

Complex DeltaSolution::log_delta_at(Complex z) const { return cauchy->eval(g, z); }
Complex DeltaSolution::delta_at(Complex z) const { return std::exp(log_delta_at(z)); }

DeltaSolution solve_scalar_rhp(const ReflectionPair& refl, const PhaseSpec& phase,
                               const SignPartition& part, const RealGrid& grid) {
    DeltaSolution sol;
    sol.grid = grid;
    sol.part = part;
    sol.cauchy = std::make_shared<CauchyOperator>(grid.data);
    sol.g = ComplexField(grid.data);
    for (int i = 0; i < grid.size(); ++i)
        sol.g[i] = part.dminus(i) ? Complex(refl.log1pq(grid.node(i))) : Complex(0.0);
    ComplexField cp = sol.cauchy->plus(sol.g);
    ComplexField cm = sol.cauchy->minus(sol.g);
    sol.delta_plus = ComplexField(grid.data);
    sol.delta_minus = ComplexField(grid.data);
    for (int i = 0; i < grid.size(); ++i) {
        sol.delta_plus[i] = std::exp(cp[i]);
        sol.delta_minus[i] = std::exp(cm[i]);
    }
    for (const auto& sp : phase.stationary()) sol.nu.push_back(refl.nu_at(sp.lambda));
    return sol;
}

Complex beta_point(Complex lambda, double lambda_j, SignPartition::Kind kind, int eps, double nu) {
    switch (kind) {
        case SignPartition::Kind::Exterior:
            return 0.0;
        case SignPartition::Kind::Interior:
            if (lambda.imag() == 0.0)
                throw std::domain_error("beta_point: interior case needs Im(lambda) != 0");
            return -M_PI * nu * (lambda.imag() > 0.0 ? 1.0 : -1.0);
        case SignPartition::Kind::LeftEndpoint:
        case SignPartition::Kind::RightEndpoint: {
            const Complex w = (double)eps * (lambda - lambda_j);
            if (w.imag() == 0.0 && w.real() <= 0.0)
                throw std::domain_error("beta_point: lambda lies on the branch cut");
            return Complex(0.0, eps * nu) * std::log(w);
        }
    }
    return 0.0;
}

double omega_limit(const DeltaSolution& delta, const PhaseSpec& phase, int j,
                   const OmegaLimitOptions& opts) {
    const auto& sp = phase.stationary().at(j);
    const double nu = delta.nu.at(j);
    const auto kind = delta.part.kinds.at(j);

    std::vector<double> u(opts.levels);
    std::vector<Complex> val(opts.levels);
    for (int m = 0; m < opts.levels; ++m) {
        const double s = opts.s0 * std::pow(opts.ratio, -m);
        const Complex z(sp.lambda, s);
        const Complex c = delta.cauchy->eval(delta.g, z);
        val[m] = (c - beta_point(z, sp.lambda, kind, sp.epsilon, nu)) / Complex(0.0, 1.0);
        u[m] = std::sqrt(s);
    }
    // Polynomial extrapolation to u = 0 (Neville), tracking the diagonal
    // increment as the convergence indicator.
    std::vector<Complex> T = val;
    Complex diag_prev = T[0], diag_last = T[0];
    for (int k = 1; k < opts.levels; ++k) {
        for (int i = 0; i + k < opts.levels; ++i)
            T[i] = (u[i + k] * T[i] - u[i] * T[i + 1]) / (u[i + k] - u[i]);
        diag_prev = diag_last;
        diag_last = T[0];
    }
    if (std::abs(diag_last - diag_prev) > opts.cauchy_tol) {
        std::string msg = "omega_limit: extrapolation not converging (increment ";
        msg += std::to_string(std::abs(diag_last - diag_prev));
        msg += ", ladder";
        for (const Complex& v : val) msg += " " + std::to_string(v.real());
        msg += ")";
        throw std::runtime_error(msg);
    }
    return diag_last.real();
}

double omega_integral(const ReflectionPair& refl, const PhaseSpec& phase, const SignPartition& part,
                      int j, double L) {
    const auto& pts = phase.stationary();
    const double lj = pts.at(j).lambda;

    // D- is a union of intervals whose finite endpoints are stationary points.
    std::vector<double> brk{-L};
    for (const auto& sp : pts)
        if (sp.lambda > -L && sp.lambda < L) brk.push_back(sp.lambda);
    brk.push_back(L);

    double integral = 0.0;
    auto integrand = [&](double y) { return std::log(std::abs(lj - y)) * refl.dlog1pq(y); };
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
        const double a = brk[i], b = brk[i + 1];
        const double mid = 0.5 * (a + b);
        if (phase.derivative(mid) >= 0.0) continue;  // not in D-
        if (lj > a && lj < b) {
            integral += integrate_graded(integrand, a, lj, false, true);
            integral += integrate_graded(integrand, lj, b, true, false);
        } else {
            integral += integrate_graded(integrand, a, b, lj == a, lj == b);
        }
    }
    double omega = integral / (2.0 * M_PI);
    for (size_t k = 0; k < pts.size(); ++k) {
        if ((int)k == j || pts[k].lambda == lj) continue;
        omega += pts[k].epsilon * refl.nu_at(pts[k].lambda) * std::log(std::abs(lj - pts[k].lambda));
    }
    (void)part;
    return omega;
}

Complex delta_model(Complex lambda, double lambda_j, SignPartition::Kind kind, int eps, double nu,
                    double omega) {
    return std::exp(Complex(0.0, omega) + beta_point(lambda, lambda_j, kind, eps, nu));
}

}  // namespace oscrh
