#include <doctest.h>

#include <cmath>
#include <random>

#include "lagspec/contfrac.hpp"
#include "lagspec/hypgeo.hpp"

using namespace lagspec;

namespace {

// Brute force over a box of rows, independent of the reducer.
double box_height(std::complex<double> z, double h, const CuspGroup& g, std::int64_t box) {
    const OrderSpec& o = g.order();
    double best = std::log(h);
    const std::int64_t bmax = o.is_real() ? 0 : box;
    for (std::int64_t ca = -box; ca <= box; ++ca)
        for (std::int64_t cb = -bmax; cb <= bmax; ++cb)
            for (std::int64_t da = -box; da <= box; ++da)
                for (std::int64_t db = -bmax; db <= bmax; ++db) {
                    const QuadInt c(o, ca, cb), d(o, da, db);
                    if (c.is_zero() || !g.is_row(c, d)) continue;
                    const double den = std::norm(c.value() * z + d.value()) + std::norm(c.value()) * h * h;
                    best = std::max(best, std::log(h / den));
                }
    return best;
}

}  // namespace

TEST_SUITE("hypgeo") {

TEST_CASE("busemann height") {
    CHECK(busemann_height({{0.3, 0.0}, 2.0}) == doctest::Approx(std::log(2.0)));
    CHECK(busemann_height({{0.0, 0.0}, 0.5}) == doctest::Approx(-std::log(2.0)));
    CHECK_THROWS_AS(busemann_height({{0.0, 0.0}, 0.0}), std::invalid_argument);
}

TEST_CASE("hyperbolic distance on a vertical line") {
    CHECK(hyperbolic_distance({{0.2, 0.1}, 1.0}, {{0.2, 0.1}, std::exp(3.0)}) == doctest::Approx(3.0));
}

TEST_CASE("quotient height in the modular group") {
    const auto g = CuspGroup::modular();
    const auto r = quotient_height({{0.5, 0.0}, 2.0}, g, 100);
    CHECK(r.height == doctest::Approx(std::log(2.0)));
    CHECK(r.certified);
    // (0, 1/4): the row (1, 0) gives 1/h = 4
    const auto s = quotient_height({{0.0, 0.0}, 0.25}, g, 100);
    CHECK(s.height == doctest::Approx(std::log(4.0)));
    CHECK(s.c.a() == 1);
    const auto tg = quotient_height({{0.0, 0.0}, 0.25}, CuspGroup::trivial(), 100);
    CHECK(tg.height == doctest::Approx(std::log(0.25)));
}

TEST_CASE("quotient height is invariant under the group") {
    const auto g = CuspGroup::bianchi(OrderSpec::maximal(1), IdealSpec::unit(OrderSpec::maximal(1)));
    const OrderSpec& o = g.order();
    const SL2 e(QuadInt(o, 2, 1), QuadInt(o, 1, 1), QuadInt(o, 1), QuadInt(o, 1));
    const ModelPoint p{{0.31, 0.17}, 0.07};
    const ModelPoint q = e.to_mobius().apply(p);
    CHECK(quotient_height(p, g, 1e4).height == doctest::Approx(quotient_height(q, g, 1e4).height).epsilon(1e-9));
}

TEST_CASE("reducer agrees with direct enumeration") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.5, 0.5), lh(-5.0, 0.0);
    for (std::int64_t m : {1, 2, 3, 7}) {
        const auto o = OrderSpec::maximal(m);
        for (const auto& ideal : {IdealSpec::unit(o), IdealSpec(o, {QuadInt(o, 2)})}) {
            const auto g = CuspGroup::bianchi(o, ideal);
            for (int i = 0; i < 6; ++i) {
                const std::complex<long double> z(u(rng), u(rng));
                const double h = std::exp(lh(rng));
                RowReducer red(g, make_evaluator(BoundaryPoint::from_complex(z)));
                const auto a = red.height(h);
                const ModelPoint p{{static_cast<double>(z.real()), static_cast<double>(z.imag())}, h};
                const auto b = quotient_height(p, g, 1e6);
                INFO("m=" << m << " ideal=" << ideal.to_string());
                REQUIRE(b.certified);
                CHECK(a.height == doctest::Approx(b.height).epsilon(1e-9));
                if (h > 0.05) CHECK(a.height == doctest::Approx(box_height(p.z, h, g, 6)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("horoball penetration") {
    const auto o = OrderSpec::maximal(1);
    const SL2 g1(QuadInt(o, 1), QuadInt(o, 0), QuadInt(o, 2, 1), QuadInt(o, 1));
    CHECK(horoball_penetration(g1) == doctest::Approx(std::log(5.0)));
    const auto z = OrderSpec::integers();
    const SL2 g2(QuadInt(z, 1), QuadInt(z, 0), QuadInt(z, 3), QuadInt(z, 1));
    CHECK(horoball_penetration(g2) == doctest::Approx(2 * std::log(3.0)));
    CHECK(D_of_r(QuadInt(o, 2, 1)) == doctest::Approx(std::log(5.0)));
    CHECK(D_of_r(3) == doctest::Approx(std::log(9.0)));
    const SL2 t(QuadInt(z, 1), QuadInt(z, 5), QuadInt(z, 0), QuadInt(z, 1));
    CHECK_THROWS_WITH_AS(horoball_penetration(t), doctest::Contains("same horoball"), DomainError);
    CHECK_THROWS_AS(horoball_penetration(Mobius({2, 0}, {0, 0}, {0.5, 0}, {0.5, 0})), DomainError);
}

TEST_CASE("group membership") {
    const auto z = OrderSpec::integers();
    CHECK_THROWS_AS(SL2(QuadInt(z, 2), QuadInt(z, 0), QuadInt(z, 0), QuadInt(z, 1)), DomainError);
    const SL2 e(QuadInt(z, 2), QuadInt(z, 1), QuadInt(z, 1), QuadInt(z, 1));
    CHECK(e.classify() == SL2::Kind::Loxodromic);
    CHECK((e * e.inverse()).classify() == SL2::Kind::Identity);
    CHECK(SL2(QuadInt(z, 1), QuadInt(z, 1), QuadInt(z, 0), QuadInt(z, 1)).classify() == SL2::Kind::Parabolic);
    CHECK(SL2(QuadInt(z, 0), QuadInt(z, -1), QuadInt(z, 1), QuadInt(z, 0)).classify() == SL2::Kind::Elliptic);
    const auto o = OrderSpec::maximal(2);
    const auto g = CuspGroup::bianchi(o, IdealSpec(o, {QuadInt(o, 0, 1)}));
    CHECK(g.contains(SL2(QuadInt(o, 1), QuadInt(o, 0), QuadInt(o, 0, 1), QuadInt(o, 1))));
    CHECK_FALSE(g.contains(SL2(QuadInt(o, 1), QuadInt(o, 0), QuadInt(o, 1), QuadInt(o, 1))));
}

TEST_CASE("cuspidal distance") {
    const auto o = OrderSpec::maximal(1);
    const auto g = CuspGroup::bianchi(o, IdealSpec::unit(o));
    const auto r = cuspidal_distance({0.1, 0.0}, {0.25, 0.0}, g);
    CHECK(r.distance == doctest::Approx(0.15));
    // u^2 = -1 sends 0.2 to -0.2, next to -0.1
    const auto s = cuspidal_distance({-0.1, 0.0}, {3.2, 0.0}, g);
    CHECK(s.distance == doctest::Approx(0.1));
}

TEST_CASE("cusp test") {
    const auto g = CuspGroup::modular();
    CHECK(cusp_test(BoundaryPoint::parse("3/7"), g).parabolic);
    CHECK_FALSE(cusp_test(BoundaryPoint::parse("sqrt2"), g).parabolic);
    const auto f = cusp_test(BoundaryPoint::from_complex(0.375L), g);
    CHECK(f.parabolic);
    CHECK(f.heuristic);
    const auto o = OrderSpec::maximal(3);
    const auto b = CuspGroup::bianchi(o, IdealSpec::unit(o));
    CHECK(cusp_test(BoundaryPoint::parse("(1+i*sqrt3)/2"), b).parabolic);
    CHECK_FALSE(cusp_test(BoundaryPoint::parse("i*sqrt2"), b).parabolic);
    CHECK_THROWS_AS(cusp_test(BoundaryPoint::parse("i"), g), std::invalid_argument);
}

TEST_CASE("closed geodesic heights in the modular group") {
    const auto z = OrderSpec::integers();
    const auto g = CuspGroup::modular();
    // [[2,1],[1,1]] has axis through the golden ratio and its conjugate
    const SL2 gold(QuadInt(z, 2), QuadInt(z, 1), QuadInt(z, 1), QuadInt(z, 1));
    const auto a = geodesic_height(gold, g);
    CHECK(a.certified);
    CHECK(a.height == doctest::Approx(std::log(std::sqrt(5.0) / 2)));
    // [[3,4],[2,3]] fixes +-sqrt2
    const SL2 r2(QuadInt(z, 3), QuadInt(z, 4), QuadInt(z, 2), QuadInt(z, 3));
    CHECK(geodesic_height(r2, g).height == doctest::Approx(std::log(std::sqrt(2.0))));
    // conjugating does not change the height
    const SL2 s(QuadInt(z, 1), QuadInt(z, 3), QuadInt(z, 0), QuadInt(z, 1));
    const SL2 w(QuadInt(z, 0), QuadInt(z, -1), QuadInt(z, 1), QuadInt(z, 0));
    const SL2 conj = w * s * r2 * s.inverse() * w.inverse();
    CHECK(geodesic_height(conj, g).height == doctest::Approx(std::log(std::sqrt(2.0))));
    // height from c(x): the top over the cusp is 1/(2 c) for the Markov family
    const Axis ax{BoundaryPoint::parse("sqrt2"), BoundaryPoint::parse("-sqrt2"), std::nullopt};
    CHECK(geodesic_height(ax, g, 50).height == doctest::Approx(std::log(std::sqrt(2.0))));
    CHECK_THROWS_AS(geodesic_height(SL2(QuadInt(z, 1), QuadInt(z, 1), QuadInt(z, 0), QuadInt(z, 1)), g), DomainError);
    const Axis cusp{BoundaryPoint::parse("1/2"), BoundaryPoint::parse("-sqrt2"), std::nullopt};
    CHECK_THROWS_AS(geodesic_height(cusp, g, 10), DomainError);
}

TEST_CASE("exact geodesic height matches direct search") {
    const auto o = OrderSpec::maximal(1);
    const auto g = CuspGroup::bianchi(o, IdealSpec::unit(o));
    const SL2 e(QuadInt(o, 2, 1), QuadInt(o, 1, 1), QuadInt(o, 1), QuadInt(o, 1));
    const auto ex = geodesic_height(e, g);
    const auto m = e.to_mobius();
    // fixed points of the Moebius map
    const std::complex<double> tr = m.a + m.d;
    const std::complex<double> sq = std::sqrt(tr * tr - 4.0);
    const BoundaryPoint p = BoundaryPoint::from_complex((m.a - m.d + sq) / (2.0 * m.c));
    const BoundaryPoint q = BoundaryPoint::from_complex((m.a - m.d - sq) / (2.0 * m.c));
    const auto direct = geodesic_height(Axis{p, q, std::nullopt}, g, 40);
    CHECK(ex.height == doctest::Approx(direct.height).epsilon(1e-9));
}

TEST_CASE("excursion limsup against the classical constant") {
    const auto g = CuspGroup::modular();
    for (const char* w : {"[(1)]", "[1; (2)]", "[0; (2, 1, 1)]"}) {
        const QuadSurd x = value_of(CFWord::parse(w));
        const double c = approx_constant(CFWord::parse(w)).value;
        const auto r = excursion_limsup(BoundaryPoint::from_surd(x), g);
        INFO(w);
        CHECK(r.estimate == doctest::Approx(-std::log(2 * c)).epsilon(1e-6));
        CHECK(r.trace.is_monotone());
        CHECK(r.exact_rows);
    }
}

TEST_CASE("excursion errors") {
    const auto g = CuspGroup::modular();
    ExcursionOptions bad;
    bad.depth = 0;
    CHECK_THROWS_WITH_AS(excursion_limsup(BoundaryPoint::parse("sqrt2"), g, bad), doctest::Contains("insufficient depth"), DomainError);
    CHECK_THROWS_WITH_AS(excursion_limsup(BoundaryPoint::parse("2/3"), g), doctest::Contains("parabolic"), DomainError);
    const auto r = excursion_limsup(BoundaryPoint::from_complex(0.5L), g);
    CHECK(r.heuristic_cusp_check);
}

TEST_CASE("lower left entries") {
    const auto o = OrderSpec::maximal(1);
    const auto g = CuspGroup::bianchi(o, IdealSpec::unit(o));
    // c and -c counted once: 1, i | 1+-i | 2, 2i
    CHECK(g.lower_left_entries(4).size() == 6);
    CHECK(CuspGroup::modular().lower_left_entries(9).size() == 3);
}

}  // TEST_SUITE
