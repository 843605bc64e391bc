#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oscrh/phase.hpp"

using namespace oscrh;

TEST_CASE("classification of stationary points") {
    const PhaseSpec sq = PhaseSpec::nls(0.0).classify();
    REQUIRE(sq.stationary().size() == 1);
    CHECK(sq.stationary()[0].lambda == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sq.stationary()[0].order == 1);
    CHECK(sq.stationary()[0].top == doctest::Approx(2.0));
    CHECK(sq.stationary()[0].epsilon == 1);

    const PhaseSpec mk = PhaseSpec::mkdv(1.0).classify();
    REQUIRE(mk.stationary().size() == 2);
    CHECK(mk.stationary()[0].lambda == doctest::Approx(-1.0));
    CHECK(mk.stationary()[0].order == 1);
    CHECK(mk.stationary()[0].top == doctest::Approx(-24.0));
    CHECK(mk.stationary()[0].epsilon == -1);
    CHECK(mk.stationary()[1].lambda == doctest::Approx(1.0));
    CHECK(mk.stationary()[1].top == doctest::Approx(24.0));
    CHECK(mk.stationary()[1].epsilon == 1);

    const PhaseSpec cub = PhaseSpec::polynomial({0.0, 0.0, 0.0, 1.0}).classify();
    REQUIRE(cub.stationary().size() == 1);
    CHECK(cub.stationary()[0].order == 2);
    CHECK(cub.stationary()[0].top == doctest::Approx(6.0));
    CHECK(cub.stationary()[0].epsilon == 0);

    // Order sum bounded by degree - 1.
    int ksum = 0;
    for (const auto& sp : mk.stationary()) ksum += sp.order;
    CHECK(ksum <= mk.degree() - 1);

    CHECK_THROWS_AS(PhaseSpec::polynomial({0.0, 1.0}).classify(), std::invalid_argument);
}

TEST_CASE("sign partition and endpoint kinds") {
    const PhaseSpec sq = PhaseSpec::nls(0.0).classify();
    const RealGrid g = build_real_grid(5.0, 8, {0.0});
    const SignPartition part = sign_partition(sq, g);
    for (int i = 0; i < g.size(); ++i) CHECK(part.dminus(i) == (g.node(i) < 0.0));
    CHECK(part.kinds[0] == SignPartition::Kind::RightEndpoint);

    const PhaseSpec msq = PhaseSpec::polynomial({0.0, 0.0, -1.0}).classify();
    const SignPartition mpart = sign_partition(msq, g);
    for (int i = 0; i < g.size(); ++i) CHECK(mpart.dminus(i) == (g.node(i) > 0.0));
    CHECK(mpart.kinds[0] == SignPartition::Kind::LeftEndpoint);

    const PhaseSpec cub = PhaseSpec::polynomial({0.0, 0.0, 0.0, 1.0}).classify();
    const SignPartition cpart = sign_partition(cub, g);
    for (int i = 0; i < g.size(); ++i) CHECK(!cpart.dminus(i));
    CHECK(cpart.kinds[0] == SignPartition::Kind::Exterior);

    // Refining the grid flips no masks, only adds nodes.
    GridOptions fine;
    fine.max_panel_width = 0.25;
    const RealGrid gf = build_real_grid(5.0, 8, {0.0}, fine);
    const SignPartition pf = sign_partition(sq, gf);
    for (int i = 0; i < gf.size(); ++i) CHECK(pf.dminus(i) == (gf.node(i) < 0.0));
    CHECK(pf.kinds[0] == part.kinds[0]);
}

TEST_CASE("local taylor model") {
    const PhaseSpec sq = PhaseSpec::nls(0.0).classify();
    const PhaseSpec m0 = sq.taylor_model(0);
    CHECK(m0.monomial_a() == doctest::Approx(0.0));
    CHECK(m0.monomial_b() == doctest::Approx(1.0));
    CHECK(m0.monomial_power() == 2);

    const PhaseSpec mk = PhaseSpec::mkdv(1.0).classify();
    const PhaseSpec m1 = mk.taylor_model(1);
    CHECK(m1.monomial_a() == doctest::Approx(-8.0));
    CHECK(m1.monomial_b() == doctest::Approx(12.0));
    CHECK(m1.monomial_center() == doctest::Approx(1.0));
    CHECK(m1.monomial_power() == 2);

    const PhaseSpec cub = PhaseSpec::polynomial({0.0, 0.0, 0.0, 1.0}).classify();
    const PhaseSpec m2 = cub.taylor_model(0);
    CHECK(m2.monomial_a() == doctest::Approx(0.0));
    CHECK(m2.monomial_b() == doctest::Approx(1.0));
    CHECK(m2.monomial_power() == 3);

    // Model and phase agree through derivative order k+1 at the point.
    for (int order = 0; order <= 2; ++order) {
        const double a = (order == 0) ? mk(1.0) : mk.derivative(1.0, order);
        const double b = (order == 0) ? m1(1.0) : m1.derivative(1.0, order);
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
    // Away from the point they differ (the model is local).
    CHECK(std::abs(mk(3.0) - m1(3.0)) > 1.0);
}
