#include "oscrh/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace oscrh {

double alpha_exponent(int eps, double nu, int k) { return 2.0 * eps * nu / (k + 1.0); }

Complex log_gamma(Complex z) {
    // Lanczos, g = 7, 9 coefficients.
    static const double g = 7.0;
    static const double coef[9] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                                   771.32342877765313,   -176.61502916214059, 12.507343278686905,
                                   -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        return std::log(M_PI) - std::log(std::sin(M_PI * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    Complex x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + (double)i);
    const Complex t = z + g + 0.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex explicit_U_first_order(double nu, int eps, double theta2, double pq) {
    if (theta2 == 0.0) throw std::invalid_argument("explicit_U_first_order: theta'' must be nonzero");
    if (std::abs(pq) < 1e-14) {
        // Limiting value as pq -> 0: nu/|pq| -> 1/(2 pi), arg Gamma(i eps nu) -> -eps pi/2.
        return Complex(0.0, 1.0) / std::sqrt(2.0 * M_PI * std::abs(theta2)) *
               std::exp(Complex(0.0, -eps * M_PI / 4.0));
    }
    const double arg_gamma = log_gamma(Complex(0.0, eps * nu)).imag();
    return Complex(0.0, nu) / std::sqrt(std::abs(nu * theta2)) / std::sqrt(std::abs(pq)) *
           std::exp(Complex(0.0, M_PI * eps / 4.0 + arg_gamma));
}

ModelConstants model_constants_numeric(double pq, int k, double b, const ModelConstantOptions& opts) {
    if (1.0 + pq <= 0.0) throw std::domain_error("model_constants_numeric: need 1 + pq > 0");
    if (k >= 3 && pq >= 1.0)
        throw std::domain_error("model_constants_numeric: need pq < 1 for orders k >= 3");
    if (b == 0.0) throw std::invalid_argument("model_constants_numeric: b must be nonzero");

    Complex pv, qv;
    bool dual_degenerate = false;
    if (pq > 0.0) {
        pv = qv = std::sqrt(pq);
    } else if (pq < 0.0) {
        pv = std::sqrt(-pq);
        qv = -pv;
    } else {
        pv = 1.0;
        qv = 0.0;
        dual_degenerate = true;  // V from the transposed run
    }

    const double decay = std::abs(b) * opts.t0 * std::sin((k + 1.0) * opts.alpha);
    const double R = std::pow(opts.tail_exponent / decay, 1.0 / (k + 1.0));
    const double phase_rate = std::abs(b) * opts.t0 * std::abs(std::cos((k + 1.0) * opts.alpha));

    auto run = [&](Complex p_run, Complex q_run) {
        WeightContinuation c;
        c.j = 0;
        c.lambda_j = 0.0;
        c.k = k;
        c.a = 0.0;
        c.b = b;
        c.t = opts.t0;
        c.p_j = p_run;
        c.q_j = q_run;
        c.nu = -std::log(1.0 + (p_run * q_run).real()) / (2.0 * M_PI);
        c.eps = (k % 2 == 0) ? 0 : (b > 0.0 ? 1 : -1);
        if (k % 2 == 1)
            c.kind = b > 0.0 ? SignPartition::Kind::RightEndpoint : SignPartition::Kind::LeftEndpoint;
        else
            c.kind = b > 0.0 ? SignPartition::Kind::Exterior : SignPartition::Kind::Interior;
        c.omega = 0.0;
        c.n_decay = 0;
        const OrientedContour gam = build_gamma_contour_adaptive(
            opts.alpha, R, opts.nodes_per_panel,
            [&](double s) { return phase_rate * std::pow(s, k + 1); }, opts.inner_levels, 1.0);
        const WeightPair wg = deform_continuation(c, gam);
        return solve_mu(wg, opts.solver);
    };

    ModelConstants out;
    out.gamma_radius = R;
    const RhpSolution solu = run(pv, qv);
    out.nodes = solu.diag.active_nodes;
    out.diag = solu.diag;
    // u_G(t0) = p U t0^{-1/(k+1)} exp(-2 Delta0), Delta0 = i t0 a/2 + i eps nu log(t0)/(k+1);
    // here a = 0 and omega = 0, so stripping the known factors recovers U.
    const double nu0 = -std::log(1.0 + pq) / (2.0 * M_PI);
    const int eps0 = (k % 2 == 0) ? 0 : (b > 0.0 ? 1 : -1);
    const Complex delta0 = Complex(0.0, eps0 * nu0 * std::log(opts.t0) / (k + 1.0));
    const Complex scale = std::pow(opts.t0, 1.0 / (k + 1.0));
    out.U = solu.u * scale * std::exp(2.0 * delta0) / pv;
    if (dual_degenerate) {
        const RhpSolution solv = run(Complex(0.0), Complex(1.0));
        out.V = solv.v * scale * std::exp(-2.0 * delta0);
    } else {
        out.V = solu.v * scale * std::exp(-2.0 * delta0) / qv;
    }
    return out;
}

std::pair<Complex, Complex> AsymptoticTerm::leading(double t) const {
    const Complex phase =
        std::exp(Complex(0.0, -(t * theta_at + alpha * std::log(t) - 2.0 * omega)));
    const double amp = std::pow(t, -1.0 / (k + 1.0));
    return {U * p_j * amp * phase, V * q_j * amp / phase};
}

AsymptoticTerm build_term(const PhaseSpec& phase, const ReflectionPair& refl,
                          const SignPartition& part, int j, double omega, ConstantSource source,
                          const ModelConstantOptions& opts) {
    const auto& sp = phase.stationary().at(j);
    AsymptoticTerm term;
    term.j = j;
    term.lambda = sp.lambda;
    term.k = sp.order;
    term.theta_at = phase(sp.lambda);
    double fact = 1.0;
    for (int i = 2; i <= sp.order + 1; ++i) fact *= i;
    term.b = sp.top / fact;
    term.p_j = refl.p.value(sp.lambda);
    term.q_j = refl.q.value(sp.lambda);
    term.nu = refl.nu_at(sp.lambda);
    term.eps = sp.epsilon;
    term.alpha = alpha_exponent(term.eps, term.nu, term.k);
    term.omega = omega;
    term.source = source;
    const double pq = (term.p_j * term.q_j).real();
    if (source == ConstantSource::ExplicitFirstOrder) {
        if (term.k != 1)
            throw std::invalid_argument("build_term: the explicit constant needs a simple point");
        term.U = explicit_U_first_order(term.nu, term.eps, phase.derivative(sp.lambda, 2), pq);
        term.V = -std::conj(term.U);
    } else {
        const ModelConstants mc = model_constants_numeric(pq, term.k, term.b, opts);
        term.U = mc.U;
        term.V = mc.V;
    }
    (void)part;
    return term;
}

std::pair<Complex, Complex> sum_contributions(const std::vector<AsymptoticTerm>& terms, double t) {
    Complex u = 0.0, v = 0.0;
    for (const auto& term : terms) {
        const auto [uj, vj] = term.leading(t);
        u += uj;
        v += vj;
    }
    return {u, v};
}

}  // namespace oscrh
