#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oscrh/contour.hpp"
#include "oscrh/legendre.hpp"
#include "oscrh/mat2.hpp"

using namespace oscrh;

TEST_CASE("mat2 algebra") {
    CHECK((Mat2::identity() * Mat2::identity() - Mat2::identity()).abs() == 0.0);
    const Mat2 tri{1.0, Complex(0.3, -0.1), 0.0, 1.0};
    CHECK(std::abs(tri.det() - 1.0) == 0.0);

    std::mt19937 rng(41);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        Mat2 a{{U(rng), U(rng)}, {U(rng), U(rng)}, {U(rng), U(rng)}, {U(rng), U(rng)}};
        if (std::abs(a.det()) < 1e-3) continue;
        CHECK((a * a.inverse() - Mat2::identity()).abs() < 1e-13);
    }
    CHECK_THROWS_AS(Mat2{}.inverse(), std::domain_error);

    const Mat2 m{1.0, 2.0, 3.0, 4.0};
    CHECK(m.off_diagonal().a11 == Complex(0.0));
    CHECK(m.off_diagonal().a12 == Complex(2.0));
    CHECK(m.abs() == doctest::Approx(std::sqrt(30.0)));
}

TEST_CASE("real grid construction contract") {
    const RealGrid g = build_real_grid(10.0, 16, {0.0});
    // Breakpoints contain -10, 0, 10 and the two-level refinement beside 0.
    CHECK(g.breakpoints.front() == -10.0);
    CHECK(g.breakpoints.back() == 10.0);
    CHECK(std::count(g.breakpoints.begin(), g.breakpoints.end(), 0.0) == 1);
    // 2 coarse intervals, each refined into 3 panels toward 0.
    CHECK(g.data->panels.size() == 6);
    for (const auto& z : g.nodes()) CHECK(z.real() != 0.0);

    double wsum = 0.0;
    const RealGrid flat = build_real_grid(10.0, 16, {});
    for (int i = 0; i < flat.size(); ++i) wsum += flat.weight(i);
    CHECK(wsum == doctest::Approx(20.0).epsilon(1e-12));

    // Node count equals nodes_per_panel times the panel count from the rule:
    // 3 coarse intervals; the middle interval has stationary endpoints on both
    // sides (3 panels toward each), the outer ones on one side (3 each).
    const RealGrid g2 = build_real_grid(12.0, 24, {-1.0, 1.0});
    const int panels = 3 + 6 + 3;
    CHECK((int)g2.data->panels.size() == panels);
    CHECK(g2.size() == 24 * panels);

    CHECK_THROWS_AS(build_real_grid(-1.0, 16, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_real_grid(10.0, 16, {11.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_real_grid(10.0, 4, {}), std::invalid_argument);
}

TEST_CASE("panel quadrature exactness and convergence") {
    const RealGrid g = build_real_grid(2.0, 12, {});
    // Polynomials up to the panel order integrate exactly.
    for (int deg : {0, 3, 7, 11}) {
        double s = 0.0;
        for (int i = 0; i < g.size(); ++i) s += g.weight(i) * std::pow(g.node(i), deg);
        const double exact = (deg % 2 == 1) ? 0.0 : 2.0 * std::pow(2.0, deg + 1) / (deg + 1);
        CHECK(s == doctest::Approx(exact).epsilon(1e-12));
    }

    // Doubling nodes_per_panel gains at least 10x on a fixed smooth integrand.
    auto osc_err = [](int npp) {
        GridOptions opts;
        opts.max_panel_width = 1.0;
        const RealGrid gg = build_real_grid(2.0, npp, {}, opts);
        Complex sated = 0.0;
        for (int i = 0; i < gg.size(); ++i)
            sated += gg.weight(i) * std::exp(Complex(0.0, 9.0) * gg.node(i));
        const Complex exact = (std::exp(Complex(0.0, 18.0)) - std::exp(Complex(0.0, -18.0))) /
                              Complex(0.0, 9.0);
        return std::abs(sated - exact);
    };
    CHECK(osc_err(8) > 10.0 * osc_err(16));
}

TEST_CASE("oscillation-aware splitting") {
    GridOptions opts;
    opts.theta = [](double x) { return x * x; };
    opts.t = 50.0;
    const RealGrid g = build_real_grid(5.0, 16, {0.0}, opts);
    Complex s = 0.0;
    for (int i = 0; i < g.size(); ++i)
        s += g.weight(i) * std::exp(-g.node(i) * g.node(i) + Complex(0.0, -50.0) * g.node(i) * g.node(i));
    // Reference: sqrt(pi/(1+50i)).
    const Complex exact = std::sqrt(M_PI / Complex(1.0, 50.0));
    CHECK(std::abs(s - exact) < 1e-10);
}

TEST_CASE("gamma contour construction") {
    const double alpha = M_PI / 12.0;
    const OrientedContour c = build_gamma_contour(alpha, 8.0, 64);
    CHECK(c.rays.size() == 6);
    CHECK(c.size() == 384);
    CHECK(c.data->complete);

    const Ray& g1 = c.rays[1];
    for (int i = g1.first_node; i < g1.first_node + g1.node_count; ++i)
        CHECK(c.data->nodes[i].imag() > 0.0);
    const Ray& g5 = c.rays[5];
    for (int i = g5.first_node; i < g5.first_node + g5.node_count; ++i)
        CHECK(c.data->nodes[i].imag() < 0.0);

    // Ray quadrature integrates constants exactly: G0 runs 0 -> R.
    Complex len = 0.0;
    const Ray& g0 = c.rays[0];
    for (int i = g0.first_node; i < g0.first_node + g0.node_count; ++i) len += c.data->dz[i];
    CHECK(std::abs(len - Complex(8.0)) < 1e-10 * 8.0);

    // Inward rays carry the reverse orientation: G1 integrates to -R e^{i a}.
    Complex len1 = 0.0;
    for (int i = g1.first_node; i < g1.first_node + g1.node_count; ++i) len1 += c.data->dz[i];
    CHECK(std::abs(len1 + 8.0 * std::polar(1.0, alpha)) < 1e-10 * 8.0);

    CHECK_THROWS_AS(build_gamma_contour(1.0, 8.0, 64), std::invalid_argument);

    // Sector classifier against the ray angles.
    CHECK(c.sector_of(std::polar(1.0, alpha / 2.0)) == 0);
    CHECK(c.sector_of(Complex(0.0, 1.0)) == 1);
    CHECK(c.sector_of(std::polar(1.0, M_PI - alpha / 2.0)) == 2);
    CHECK(c.sector_of(std::polar(1.0, M_PI + alpha / 2.0)) == 3);
    CHECK(c.sector_of(Complex(0.0, -1.0)) == 4);
    CHECK(c.sector_of(std::polar(1.0, -alpha / 2.0)) == 5);
    CHECK(c.plus_side(std::polar(1.0, alpha / 2.0)));
    CHECK(!c.plus_side(Complex(0.0, 1.0)));
    CHECK(c.plus_side(Complex(0.0, -1.0)));
}
