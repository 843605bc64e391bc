#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "oscrh/scalar_delta.hpp"

using namespace oscrh;

namespace {

struct Setup {
    PhaseSpec phase;
    RealGrid grid;
    SignPartition part;
    ReflectionPair refl;
    DeltaSolution delta;
};

Setup nls_defocusing(double amplitude = 0.4) {
    Setup s;
    s.phase = PhaseSpec::nls(0.0).classify();
    GridOptions opts;
    opts.max_panel_width = 1.0;
    opts.dyadic_levels = 12;
    s.grid = build_real_grid(10.0, 16, {0.0}, opts);
    s.part = sign_partition(s.phase, s.grid);
    s.refl = ReflectionPair::defocusing(Envelope::gaussian(amplitude, 1.0));
    s.delta = solve_scalar_rhp(s.refl, s.phase, s.part, s.grid);
    return s;
}

Setup mkdv_defocusing(double amplitude = 0.3) {
    Setup s;
    s.phase = PhaseSpec::mkdv(1.0).classify();
    GridOptions opts;
    opts.max_panel_width = 1.0;
    opts.dyadic_levels = 12;
    s.grid = build_real_grid(10.0, 16, {-1.0, 1.0}, opts);
    s.part = sign_partition(s.phase, s.grid);
    s.refl = ReflectionPair::defocusing(Envelope::symmetric_pair(amplitude, 8.0, 1.0));
    s.delta = solve_scalar_rhp(s.refl, s.phase, s.part, s.grid);
    return s;
}

}  // namespace

TEST_CASE("degenerate data gives the trivial solution") {
    Setup s = nls_defocusing();
    const ReflectionPair degen = ReflectionPair::degenerate(Envelope::gaussian(0.4, 1.0));
    const DeltaSolution d = solve_scalar_rhp(degen, s.phase, s.part, s.grid);
    for (int i = 0; i < s.grid.size(); ++i) {
        CHECK(std::abs(d.delta_plus[i] - 1.0) < 1e-13);
        CHECK(std::abs(d.delta_minus[i] - 1.0) < 1e-13);
    }
    CHECK(omega_limit(d, s.phase, 0) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(omega_integral(degen, s.phase, s.part, 0, 10.0) == doctest::Approx(0.0));
}

TEST_CASE("boundary moduli and jump relation") {
    Setup s = nls_defocusing();
    double dev_mod = 0.0, dev_unim = 0.0, dev_jump = 0.0, sup = 0.0;
    for (int i = 0; i < s.grid.size(); ++i) {
        const double x = s.grid.node(i);
        const double pq = -0.16 * std::exp(-2.0 * x * x);
        const double want = (x < 0.0) ? std::sqrt(1.0 + pq) : 1.0;
        dev_mod = std::max(dev_mod, std::abs(std::abs(s.delta.delta_plus[i]) - want));
        dev_unim = std::max(dev_unim,
                            std::abs(std::abs(s.delta.delta_plus[i] * s.delta.delta_minus[i]) - 1.0));
        const Complex jump = s.part.dminus(i) ? Complex(1.0 + pq) : Complex(1.0);
        dev_jump = std::max(dev_jump,
                            std::abs(s.delta.delta_plus[i] - s.delta.delta_minus[i] * jump));
        sup = std::max(sup, std::abs(s.delta.delta_plus[i]));
    }
    CHECK(dev_mod < 1e-8);
    CHECK(dev_unim < 1e-8);
    CHECK(dev_jump < 1e-8 * sup);

    // Off-line bound: ln|delta(2i)| <= sup |log(1+pq)|.
    double gsup = 0.0;
    for (int i = 0; i < s.grid.size(); ++i) gsup = std::max(gsup, std::abs(s.delta.g[i]));
    CHECK(std::log(std::abs(s.delta.delta_at(Complex(0.0, 2.0)))) <= gsup + 1e-12);

    // Reflection symmetry delta(z) conj(delta(conj z)) = 1.
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-4.0, 4.0);
    for (int rep = 0; rep < 100; ++rep) {
        const Complex z(U(rng), U(rng) + ((U(rng) > 0) ? 1.0 : -1.0) * 0.3);
        const Complex v = s.delta.delta_at(z) * std::conj(s.delta.delta_at(std::conj(z)));
        CHECK(std::abs(v - 1.0) < 1e-8);
    }
}

TEST_CASE("beta case values") {
    CHECK(beta_point(Complex(2.0, 1.0), 0.0, SignPartition::Kind::Exterior, 0, 0.3) == Complex(0.0));
    // eps=+1, nu=0.1, lambda - lambda_j = i: i 0.1 log(i) = -0.05 pi.
    const Complex b1 = beta_point(Complex(0.0, 1.0), 0.0, SignPartition::Kind::RightEndpoint, 1, 0.1);
    CHECK(std::abs(b1 - Complex(-0.05 * M_PI)) < 1e-14);
    const Complex b2 = beta_point(Complex(0.3, 0.7), 0.0, SignPartition::Kind::Interior, 0, 0.1);
    CHECK(std::abs(b2 - Complex(-0.1 * M_PI)) < 1e-14);
    CHECK_THROWS_AS(beta_point(Complex(-1.0, 0.0), 0.0, SignPartition::Kind::RightEndpoint, 1, 0.1),
                    std::domain_error);
    CHECK_THROWS_AS(beta_point(Complex(2.0, 0.0), 0.0, SignPartition::Kind::Interior, 0, 0.1),
                    std::domain_error);
}

TEST_CASE("omega by limit and by integral agree") {
    Setup s = nls_defocusing();
    const double w_lim = omega_limit(s.delta, s.phase, 0);
    const double w_int = omega_integral(s.refl, s.phase, s.part, 0, 10.0);
    CHECK(std::abs(w_lim - w_int) < 1e-4);

    Setup m = mkdv_defocusing();
    for (int j : {0, 1}) {
        const double wl = omega_limit(m.delta, m.phase, j);
        const double wi = omega_integral(m.refl, m.phase, m.part, j, 10.0);
        CHECK(std::abs(wl - wi) < 1e-4);
    }
}

TEST_CASE("two-point cross term in omega") {
    Setup m = mkdv_defocusing();
    // Independent quadrature of the log-kernel part at lambda = +1; what the
    // integral route adds beyond it must be exactly eps(-1) nu(-1) log 2.
    auto dlog = [&](double y) { return m.refl.dlog1pq(y); };
    // D- of the mkdv phase is (-1, 1); substitute y = 1 - e^{-u} so the log
    // endpoint singularity becomes a smooth exponentially damped integrand.
    const Complex left =
        oracle::integrate([&](double y) { return std::log(std::abs(1.0 - y)) * dlog(y); }, -1.0,
                          0.0, 1e-12);
    const Complex right = oracle::integrate(
        [&](double u) { return -u * dlog(1.0 - std::exp(-u)) * std::exp(-u); }, 0.0, 40.0, 1e-12);
    const Complex log_part = (left + right) / (2.0 * M_PI);
    const double cross = m.phase.stationary()[0].epsilon * m.refl.nu_at(-1.0) * std::log(2.0);
    const double w_int = omega_integral(m.refl, m.phase, m.part, 1, 10.0);
    CHECK(w_int == doctest::Approx(log_part.real() + cross).epsilon(1e-6));
    CHECK(std::abs(cross) > 1e-4);  // the cross term is genuinely visible
}

TEST_CASE("local model of delta") {
    Setup s = nls_defocusing();
    const auto& sp = s.phase.stationary()[0];
    const double nu = s.refl.nu_at(0.0);
    const double omega = omega_integral(s.refl, s.phase, s.part, 0, 10.0);

    // Trivial data.
    CHECK(std::abs(delta_model(Complex(0.3, 0.4), 0.0, SignPartition::Kind::RightEndpoint, 1, 0.0,
                               0.0) -
                   1.0) < 1e-14);

    // Growth exponent of |delta - delta_j| along the vertical ray.
    std::vector<double> svals, dvals;
    for (double sc = 1.0; sc > 1.2e-3; sc *= 0.6) {
        const Complex z(0.0, sc);
        const Complex dm = delta_model(z, sp.lambda, s.part.kinds[0], sp.epsilon, nu, omega);
        dvals.push_back(std::abs(s.delta.delta_at(z) - dm));
        svals.push_back(sc);
    }
    const double slope = oracle::loglog_slope(svals, dvals);
    CHECK(slope >= 0.45);

    // Endpoint-case bound |delta_j| <= exp(pi |nu|).
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int rep = 0; rep < 50; ++rep) {
        const Complex z(U(rng), U(rng) + 0.1);
        const Complex dm = delta_model(z, sp.lambda, s.part.kinds[0], sp.epsilon, nu, omega);
        CHECK(std::abs(dm) <= std::exp(M_PI * std::abs(nu)) + 1e-12);
    }
}
