#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "oscrh/cauchy.hpp"

using namespace oscrh;

namespace {

GridOptions resolved() {
    GridOptions o;
    o.max_panel_width = 1.5;
    return o;
}

ComplexField gaussian_field(const std::shared_ptr<const ContourData>& c, double sigma = 1.0) {
    ComplexField f(c);
    for (int i = 0; i < f.size(); ++i) {
        const Complex z = c->nodes[i];
        f[i] = std::exp(-sigma * z * z);
    }
    return f;
}

ComplexField random_smooth_field(const std::shared_ptr<const ContourData>& c, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const double a = U(rng), b = U(rng), w = 2.0 + U(rng);
    ComplexField f(c);
    for (int i = 0; i < f.size(); ++i) {
        const Complex z = c->nodes[i];
        f[i] = (a + Complex(0.0, b) * z) * std::exp(-0.5 * z * z) * std::cos(w * z.real());
    }
    return f;
}

int node_nearest(const RealGrid& g, double x) {
    int at = 0;
    double best = 1e300;
    for (int i = 0; i < g.size(); ++i)
        if (std::abs(g.node(i) - x) < best) {
            best = std::abs(g.node(i) - x);
            at = i;
        }
    return at;
}

}  // namespace

TEST_CASE("plemelj and orthogonality on the line") {
    const RealGrid g = build_real_grid(8.0, 16, {0.0}, resolved());
    CauchyOperator op(g.data);
    const ComplexField f = random_smooth_field(g.data, 7);
    const ComplexField cp = op.plus(f), cm = op.minus(f);
    double plemelj = 0.0;
    const double sup = f.sup_norm();
    for (int i = 0; i < f.size(); ++i) plemelj = std::max(plemelj, std::abs(cp[i] - cm[i] - f[i]));
    CHECK(plemelj <= 1e-10 * sup);

    // Orthogonality at the stated tolerance, on a field whose transform has
    // resolved tails (one-sided frequency content pushes them below 1e-12).
    GridOptions fine;
    fine.max_panel_width = 0.5;
    const RealGrid gfine = build_real_grid(8.0, 20, {}, fine);
    CauchyOperator opf(gfine.data);
    ComplexField osc(gfine.data);
    for (int i = 0; i < osc.size(); ++i) {
        const double x = gfine.node(i);
        osc[i] = std::exp(Complex(-x * x, 12.0 * x));
    }
    CHECK(opf.minus(opf.plus(osc)).sup_norm() <= 1e-8 * osc.sup_norm());
    CHECK(opf.plus(opf.minus(osc)).sup_norm() <= 1e-8 * osc.sup_norm());

    // For generic decaying fields the defect is the 1/x tail of the inner
    // transform cut at L: it must shrink like 1/L.
    auto defect = [&](double L) {
        const RealGrid gg = build_real_grid(L, 16, {}, resolved());
        CauchyOperator oo(gg.data);
        ComplexField h(gg.data);
        for (int i = 0; i < h.size(); ++i) {
            const double x = gg.node(i);
            h[i] = std::exp(-x * x);
        }
        return oo.minus(oo.plus(h)).sup_norm();
    };
    const double d8 = defect(8.0), d16 = defect(16.0), d32 = defect(32.0);
    CHECK(d16 / d8 < 0.7);
    CHECK(d32 / d16 < 0.7);

    ComplexField zero(g.data);
    CHECK(op.plus(zero).sup_norm() == 0.0);
}

TEST_CASE("plemelj and orthogonality on the six-ray contour") {
    // Near-uniform panels so the s^2 + 16 s ray phase of the test field stays
    // within the interpolation capacity.
    const OrientedContour c =
        build_gamma_contour(M_PI / 12.0, 6.0, 720, {.panels_per_ray = 36, .grading_ratio = 1.08});
    CauchyOperator op(c.data);
    // Modulated Gaussian: decays along all six rays, and its oriented moments
    // are exp(-M^2/(4 sigma))-small, so the truncated-contour tails vanish.
    ComplexField f(c.data);
    for (int i = 0; i < f.size(); ++i) {
        const Complex z = c.data->nodes[i];
        f[i] = (1.0 + 0.3 * z) * std::exp(-2.0 * z * z + Complex(0.0, 16.0) * z);
    }
    const ComplexField cp = op.plus(f), cm = op.minus(f);
    double plemelj = 0.0;
    for (int i = 0; i < f.size(); ++i) plemelj = std::max(plemelj, std::abs(cp[i] - cm[i] - f[i]));
    CHECK(plemelj <= 1e-10 * f.sup_norm());
    CHECK(op.minus(cp).sup_norm() <= 1e-8 * f.sup_norm());
    CHECK(op.plus(cm).sup_norm() <= 1e-8 * f.sup_norm());
}

TEST_CASE("boundary value against the offset-quadrature oracle") {
    const RealGrid g = build_real_grid(9.0, 20, {}, resolved());
    CauchyOperator op(g.data);
    const ComplexField f = gaussian_field(g.data);
    const ComplexField cp = op.plus(f);

    const int at0 = node_nearest(g, 0.0);
    auto gauss = [](double s) { return Complex(std::exp(-s * s)); };
    const Complex want = oracle::richardson_limit(
        [&](double eps) { return oracle::cauchy_offset(gauss, -9.0, 9.0, g.node(at0), eps); },
        0.1, 7);
    CHECK(std::abs(cp[at0] - want) < 1e-9);
}

TEST_CASE("off-contour evaluation") {
    const RealGrid g = build_real_grid(9.0, 20, {}, resolved());
    CauchyOperator op(g.data);
    MatrixField f(g.data);
    for (int i = 0; i < f.size(); ++i) {
        const double x = g.node(i);
        f[i] = Mat2{1.0, 0.5, -0.25, 1.0} * Complex(std::exp(-x * x));
    }
    const Complex z(0.0, 2.0);
    const Mat2 got = op.eval(f, z);
    const Complex base = oracle::integrate(
                             [&](double s) { return std::exp(-s * s) / (s - z); }, -9.0, 9.0, 1e-14) /
                         Complex(0.0, 2.0 * M_PI);
    CHECK(std::abs(got.a11 - base) < 1e-10);
    CHECK(std::abs(got.a12 - 0.5 * base) < 1e-10);
    CHECK(std::abs(got.a21 + 0.25 * base) < 1e-10);

    // Analyticity: Cauchy-Riemann residual by finite differences.
    const double h = 1e-4;
    auto ev = [&](Complex zz) { return op.eval(f, zz).a11; };
    const Complex dx = (ev(z + h) - ev(z - h)) / (2.0 * h);
    const Complex dy = (ev(z + Complex(0.0, h)) - ev(z - Complex(0.0, h))) / (2.0 * h);
    CHECK(std::abs(dx - dy / Complex(0.0, 1.0)) < 1e-6);

    // Refusal near the contour.
    CHECK_THROWS_AS(op.eval(f, Complex(0.3, 1e-9)), std::domain_error);

    // Boundary-limit consistency: eval just off the line matches the offset
    // oracle at every admissible height, and the oracle's own limit matches
    // the computed boundary values.
    GridOptions fine;
    fine.max_panel_width = 0.5;
    const RealGrid gf = build_real_grid(9.0, 20, {}, fine);
    CauchyOperator opf(gf.data);
    const ComplexField sf = gaussian_field(gf.data);
    const ComplexField cp = opf.plus(sf), cm = opf.minus(sf);
    const int mid = node_nearest(gf, 0.7);
    const double x0 = gf.node(mid);
    auto gauss = [](double s) { return Complex(std::exp(-s * s)); };
    for (double eps : {0.4, 0.1, 0.05}) {
        const Complex above = opf.eval(sf, Complex(x0, eps));
        const Complex below = opf.eval(sf, Complex(x0, -eps));
        CHECK(std::abs(above - oracle::cauchy_offset(gauss, -9.0, 9.0, x0, eps)) < 1e-10);
        CHECK(std::abs(below - oracle::cauchy_offset(gauss, -9.0, 9.0, x0, -eps)) < 1e-10);
    }
    const Complex lim_above = oracle::richardson_limit(
        [&](double eps) { return oracle::cauchy_offset(gauss, -9.0, 9.0, x0, eps); }, 0.1, 7);
    const Complex lim_below = oracle::richardson_limit(
        [&](double eps) { return oracle::cauchy_offset(gauss, -9.0, 9.0, x0, -eps); }, 0.1, 7);
    CHECK(std::abs(lim_above - cp[mid]) < 1e-9);
    CHECK(std::abs(lim_below - cm[mid]) < 1e-9);
}

TEST_CASE("hilbert transform") {
    const RealGrid g = build_real_grid(10.0, 20, {}, resolved());
    CauchyOperator op(g.data);
    ComplexField zero(g.data);
    CHECK(op.hilbert(zero).sup_norm() == 0.0);

    const ComplexField f = gaussian_field(g.data);
    const ComplexField hf = op.hilbert(f);

    // H f = (1/pi i) PV int f(s)/(s-x) ds, checked at a node near x = 1.
    const int at = node_nearest(g, 1.0);
    const double x0 = g.node(at);
    const Complex pv = oracle::pv_integral([](double s) { return Complex(std::exp(-s * s)); },
                                           -10.0, 10.0, x0);
    CHECK(std::abs(hf[at] - pv / Complex(0.0, M_PI)) < 1e-9);

    // With H = C+ + C- (= H_+ - H_-), orthogonality gives H(Hf) = f. Checked
    // on a one-sided-frequency field so the truncated tails stay resolved.
    GridOptions fine;
    fine.max_panel_width = 0.5;
    const RealGrid gfine = build_real_grid(10.0, 20, {}, fine);
    CauchyOperator opf(gfine.data);
    ComplexField osc(gfine.data);
    for (int i = 0; i < osc.size(); ++i) {
        const double x = gfine.node(i);
        osc[i] = std::exp(Complex(-x * x, 12.0 * x));
    }
    const ComplexField hh = opf.hilbert(opf.hilbert(osc));
    double dev = 0.0;
    for (int i = 0; i < osc.size(); ++i) dev = std::max(dev, std::abs(hh[i] - osc[i]));
    CHECK(dev < 1e-8 * osc.sup_norm());
}

TEST_CASE("coefficient at infinity") {
    const RealGrid g = build_real_grid(9.0, 16, {}, resolved());
    CauchyOperator op(g.data);
    ComplexField zero(g.data);
    CHECK(std::abs(op.coefficient_at_infinity(zero)) == 0.0);

    // Constant field with int f = 2 pi i maps to -1 (exactness on constants).
    ComplexField cf(g.data);
    for (int i = 0; i < cf.size(); ++i) cf[i] = Complex(0.0, 2.0 * M_PI) / 18.0;
    CHECK(std::abs(op.coefficient_at_infinity(cf) + 1.0) < 1e-13);

    // Gaussian times a constant matrix.
    MatrixField mf(g.data);
    const Mat2 K{0.3, -0.2, 1.0, Complex(0.0, 0.5)};
    for (int i = 0; i < mf.size(); ++i) {
        const double x = g.node(i);
        mf[i] = K * Complex(std::exp(-x * x));
    }
    const Mat2 gotm = op.coefficient_at_infinity(mf);
    const Complex want = -std::sqrt(M_PI) / (2.0 * M_PI * Complex(0.0, 1.0));
    CHECK(std::abs(gotm.a11 - K.a11 * want) < 1e-12);
    CHECK(std::abs(gotm.a12 - K.a12 * want) < 1e-12);
    CHECK(std::abs(gotm.a21 - K.a21 * want) < 1e-12);
    CHECK(std::abs(gotm.a22 - K.a22 * want) < 1e-12);
}
