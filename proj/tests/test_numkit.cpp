#include <doctest.h>

#include <random>

#include "lagspec/numkit.hpp"

using namespace lagspec;

TEST_SUITE("numkit") {

TEST_CASE("norms of small elements") {
    const auto g = OrderSpec::maximal(1);
    CHECK(quad_norm(QuadInt(g, 1, 1)) == 2);
    CHECK(quad_norm(QuadInt(g, 0, 0)) == 0);
    const auto e = OrderSpec::maximal(3);
    CHECK(e.trace_omega() == 1);
    CHECK(quad_norm(QuadInt(e, 0, 1)) == 1);
    // norm equals |x|^2 of the complex embedding
    const QuadInt x(e, 3, -5);
    CHECK(static_cast<double>(x.norm()) == doctest::Approx(std::norm(x.value())).epsilon(1e-12));
}

TEST_CASE("omega convention") {
    CHECK(OrderSpec::maximal(1).omega().imag() == doctest::Approx(1.0));
    CHECK(OrderSpec::maximal(2).omega().imag() == doctest::Approx(std::sqrt(2.0)));
    CHECK(OrderSpec::maximal(7).omega().real() == doctest::Approx(0.5));
    CHECK(OrderSpec::maximal(7).norm_omega() == 2);
    CHECK_THROWS_AS(OrderSpec::maximal(4), std::invalid_argument);
    CHECK_THROWS_AS(OrderSpec::from_omega(1, 1, 1), std::invalid_argument);
    const auto z3 = OrderSpec::from_omega(3, 0, 2);
    CHECK_FALSE(z3.is_maximal());
    CHECK(z3.discriminant() == -12);
}

TEST_CASE("norm is multiplicative and conj is an involution") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-40, 40);
    for (std::int64_t m : {1, 2, 3, 5, 7, 11, 15}) {
        const auto o = OrderSpec::maximal(m);
        for (int i = 0; i < 200; ++i) {
            const QuadInt x(o, d(rng), d(rng)), y(o, d(rng), d(rng)), z(o, d(rng), d(rng));
            CHECK(quad_norm(x * y) == quad_norm(x) * quad_norm(y));
            CHECK(x * y == y * x);
            CHECK((x * y) * z == x * (y * z));
            CHECK((x * y).conj() == x.conj() * y.conj());
            CHECK((x + y).conj() == x.conj() + y.conj());
            CHECK(x.conj().conj() == x);
            CHECK(quad_norm(x) >= 0);
            CHECK((quad_norm(x) == 0) == x.is_zero());
        }
    }
}

TEST_CASE("parse and print ring elements") {
    const auto g = OrderSpec::maximal(1);
    CHECK(QuadInt::parse(g, "1+1*w") == QuadInt(g, 1, 1));
    CHECK(QuadInt::parse(g, " -w ") == QuadInt(g, 0, -1));
    CHECK(QuadInt::parse(g, "3-2*w") == QuadInt(g, 3, -2));
    CHECK(QuadInt::parse(g, "2w+1") == QuadInt(g, 1, 2));
    CHECK(QuadInt(g, 3, -2).to_string() == "3-2*w");
    CHECK(QuadInt(g, 0, 1).to_string() == "w");
    CHECK_THROWS_AS(QuadInt::parse(g, "1+x"), std::invalid_argument);
    CHECK_THROWS_AS(QuadInt::parse(OrderSpec::integers(), "w"), std::invalid_argument);
}

TEST_CASE("ideal membership") {
    const auto g = OrderSpec::maximal(1);
    const IdealSpec I(g, {QuadInt(g, 1, 1)});
    CHECK(ideal_contains(I, QuadInt(g, 2)));
    CHECK_FALSE(ideal_contains(I, QuadInt(g, 1)));
    CHECK(I.index() == 2);
    const IdealSpec unit = IdealSpec::unit(g);
    CHECK(unit.is_unit());
    CHECK(ideal_contains(unit, QuadInt(g, 17, -4)));
    CHECK_THROWS_AS(IdealSpec(g, {QuadInt(g, 0)}), DomainError);
}

TEST_CASE("ideal_is_unit") {
    const auto g = OrderSpec::maximal(1);
    const std::vector<QuadInt> a{QuadInt(g, 0, 1), QuadInt(g, 1, 1)};
    const std::vector<QuadInt> b{QuadInt(g, 2), QuadInt(g, 1, 1)};
    const std::vector<QuadInt> c{QuadInt(OrderSpec::integers(), 1)};
    const std::vector<QuadInt> z{QuadInt(g, 0), QuadInt(g, 0)};
    CHECK(ideal_is_unit(a));
    CHECK_FALSE(ideal_is_unit(b));
    CHECK(ideal_is_unit(c));
    CHECK_THROWS_WITH_AS(ideal_is_unit(z), "zero ideal", DomainError);
}

TEST_CASE("ideal closure and basis idempotence") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-9, 9);
    for (std::int64_t m : {1, 2, 3, 5, 7}) {
        const auto o = OrderSpec::maximal(m);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<QuadInt> gens{QuadInt(o, d(rng), d(rng)), QuadInt(o, d(rng), d(rng))};
            if (gens[0].is_zero() && gens[1].is_zero()) continue;
            const IdealSpec I(o, gens);
            for (const auto& g : gens) CHECK(I.contains(g));
            const auto [b1, b2] = I.basis();
            const IdealSpec J(o, {b1, b2});
            CHECK(J.same_lattice(I));
            CHECK(J.contains(b1));
            CHECK(J.contains(b2));
            for (int k = 0; k < 10; ++k) {
                const QuadInt r(o, d(rng), d(rng)), s(o, d(rng), d(rng));
                const QuadInt x = r * gens[0] + s * gens[1];
                const QuadInt y = s * gens[0] - r * gens[1];
                CHECK(I.contains(x));
                CHECK(I.contains(x + y));
                CHECK(I.contains(r * x));
            }
            // the index equals the norm of the gcd for principal orders
            if (o.is_euclidean()) {
                const auto g = xgcd(gens[0], gens[1]);
                CHECK(g.s * gens[0] + g.t * gens[1] == g.gcd);
                CHECK(I.index() == quad_norm(g.gcd));
            }
        }
    }
}

TEST_CASE("non-principal ideal in Z[sqrt(-5)]") {
    const auto o = OrderSpec::maximal(5);
    const IdealSpec P(o, {QuadInt(o, 2), QuadInt(o, 1, 1)});
    CHECK(P.index() == 2);
    CHECK_FALSE(P.contains(QuadInt(o, 1)));
    CHECK(P.contains(QuadInt(o, 3, 1)));
    CHECK_THROWS_AS(xgcd(QuadInt(o, 2), QuadInt(o, 1, 1)), DomainError);
}

TEST_CASE("units") {
    CHECK(units(OrderSpec::maximal(1)).size() == 4);
    CHECK(units(OrderSpec::maximal(3)).size() == 6);
    CHECK(units(OrderSpec::maximal(2)).size() == 2);
    CHECK(units(OrderSpec::integers()).size() == 2);
    for (const auto& u : units(OrderSpec::maximal(3))) CHECK(u.norm() == 1);
}

TEST_CASE("exact division and nearest quotient") {
    const auto g = OrderSpec::maximal(1);
    const auto q = exact_div(QuadInt(g, 2), QuadInt(g, 1, 1));
    REQUIRE(q.has_value());
    CHECK(*q == QuadInt(g, 1, -1));
    CHECK_FALSE(exact_div(QuadInt(g, 1), QuadInt(g, 1, 1)).has_value());
    const QuadInt x(g, 17, 5), y(g, 3, -4);
    const QuadInt r = x - nearest_quotient(x, y) * y;
    CHECK(r.norm() < y.norm());
}

TEST_CASE("KNumber field arithmetic") {
    const KNumber a(1, BigRational(1, 2), BigRational(1, 3));
    const KNumber b(1, 2, -1);
    CHECK((a * b) / b == a);
    CHECK((a + b) - b == a);
    CHECK(a.norm() == BigRational(1, 4) + BigRational(1, 9));
    CHECK(KNumber::from(QuadInt(OrderSpec::maximal(3), 0, 1)) == KNumber(3, BigRational(1, 2), BigRational(1, 2)));
    CHECK_THROWS_AS(KNumber(1, 1, 1) * KNumber(2, 0, 1), DomainError);
}

TEST_CASE("QuadSurd normalisation, sign and floor") {
    const QuadSurd phi(1, 1, 5, 2);
    CHECK(phi.floor() == 1);
    CHECK(phi.to_double() == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-15));
    CHECK((phi * phi - phi) == QuadSurd::rational(1));
    const QuadSurd r8(0, 1, 8);
    CHECK(r8.d() == 2);
    CHECK(r8.b() == 2);
    CHECK(QuadSurd(3, 1, 4).is_rational());
    CHECK(QuadSurd(-7, 5, 2).sign() == 1);
    CHECK(QuadSurd(-8, 5, 2).sign() == -1);
    CHECK(QuadSurd(-1, -1, 2).floor() == -3);
    CHECK(QuadSurd(0, -1, 2).floor() == -2);
    // heavy cancellation; compare with the rationalised form
    const QuadSurd tiny(1970, -1393, 2, 2);
    CHECK(tiny.to_double() == doctest::Approx(1.0 / (1970.0 + 1393.0 * std::sqrt(2.0))).epsilon(1e-14));
    CHECK(tiny.linear(1, 0) == doctest::Approx(tiny.to_double()));
    CHECK_THROWS_AS(QuadSurd(0, 1, 2) + QuadSurd(0, 1, 3), DomainError);
}

TEST_CASE("literal parser") {
    const Literal phi = parse_literal("(1+sqrt5)/2");
    REQUIRE(phi.as_surd().has_value());
    CHECK(*phi.as_surd() == QuadSurd(1, 1, 5, 2));
    const Literal e3 = parse_literal("(1+i*sqrt3)/2");
    CHECK_FALSE(e3.is_real());
    REQUIRE(e3.as_knumber().has_value());
    CHECK(*e3.as_knumber() == KNumber(3, BigRational(1, 2), BigRational(1, 2)));
    CHECK(std::abs(e3.approx - std::complex<long double>(0.5L, std::sqrt(3.0L) / 2)) < 1e-18L);
    const Literal half = parse_literal("1/2 + i/3");
    CHECK(half.exact);
    CHECK(*half.as_knumber() == KNumber(1, BigRational(1, 2), BigRational(1, 3)));
    const Literal fl = parse_literal("0.25+0.4i");
    CHECK_FALSE(fl.exact);
    CHECK(std::abs(fl.approx - std::complex<long double>(0.25L, 0.4L)) < 1e-18L);
    CHECK(parse_literal("sqrt(8)").radical_coeff == 2);
    CHECK(parse_literal("sqrt(9)").re == 3);
    CHECK(parse_literal("2sqrt(-3)").radicand == -3);
    CHECK_THROWS_AS(parse_literal("sqrt2+sqrt3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_literal("1+"), std::invalid_argument);
    CHECK_THROWS_AS(parse_literal("1/(1-1)"), DomainError);
}

}
