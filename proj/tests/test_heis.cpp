#include <doctest.h>

#include <cmath>
#include <random>

#include "lagspec/heis.hpp"

using namespace lagspec;

namespace {

using cld = std::complex<long double>;

HeisPoint exact_point(std::int64_t zi, std::int64_t wr, std::int64_t wi, std::int64_t den) {
    const KNumber w(1, BigRational(wr, den), BigRational(wi, den));
    return HeisPoint(KNumber(1, w.norm() / 2, BigRational(zi, den)), w);
}

HeisPoint float_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<long double> u(-3, 3);
    const cld w(u(rng), u(rng));
    return HeisPoint(cld(std::norm(w) / 2, u(rng)), w);
}

// |c| d(x, (a/c, alpha/c)) straight from the definition over a box of triples.
double brute_c_prime(const OrderSpec& o, const IdealSpec& I, const HeisPoint& x, std::int64_t lo, std::int64_t hi) {
    double best = 1e300;
    const int B = 12;
    for (std::int64_t c1 = -B; c1 <= B; ++c1)
        for (std::int64_t c2 = 0; c2 <= B; ++c2) {
            const QuadInt c(o, c1, c2);
            if (c.is_zero() || c.norm() < lo || c.norm() > hi) continue;
            const auto cw = c.value() * std::complex<double>(x.w);
            for (std::int64_t a1 = -3; a1 <= 3; ++a1)
                for (std::int64_t a2 = -3; a2 <= 3; ++a2) {
                    const QuadInt alpha = QuadInt(o, a1, a2) + nearest_element(o, cw);
                    const auto A0 = alpha.value() * std::conj(std::complex<double>(x.w)) - c.value() * std::conj(std::complex<double>(x.z));
                    const QuadInt base = nearest_element(o, A0);
                    for (std::int64_t b1 = -6; b1 <= 6; ++b1)
                        for (std::int64_t b2 = -6; b2 <= 6; ++b2) {
                            const QuadInt a = base + QuadInt(o, b1, b2);
                            if (!is_in_EprimeI(o, I, a, alpha, c)) continue;
                            const double v = std::abs(c.value()) * static_cast<double>(cygan_dist(x, HeisRational{a, alpha, c}.point()));
                            best = std::min(best, v);
                        }
                }
        }
    return best;
}

}  // namespace

TEST_SUITE("heis") {

TEST_CASE("group law examples") {
    const HeisPoint o(KNumber(1, 0), KNumber(1, 0));
    const HeisPoint x = exact_point(3, 2, 1, 1);
    const HeisPoint xo = heis_mul(x, o);
    CHECK(*xo.ez == *x.ez);
    CHECK(*xo.ew == *x.ew);
    const HeisPoint e = heis_mul(x, heis_inverse(x));
    CHECK(e.ez->is_zero());
    CHECK(e.ew->is_zero());
    const HeisPoint t(KNumber(1, 2), KNumber(1, 2));
    const HeisPoint tt = heis_mul(t, t);
    CHECK(*tt.ez == KNumber(1, 8));
    CHECK(*tt.ew == KNumber(1, 4));
    CHECK_THROWS_AS(HeisPoint(KNumber(1, 1), KNumber(1, 1)), DomainError);
    CHECK_THROWS_AS(HeisPoint(cld(1, 0), cld(1, 0)), DomainError);
}

TEST_CASE("Cygan distance") {
    const HeisPoint o(KNumber(1, 0), KNumber(1, 0));
    const HeisPoint t(KNumber(1, 2), KNumber(1, 2));
    CHECK(static_cast<double>(cygan_dist(o, t)) == doctest::Approx(std::sqrt(8.0)));
    CHECK(static_cast<double>(cygan_dist(t, o)) == doctest::Approx(std::sqrt(8.0)));
    CHECK(cygan_dist(t, t) == 0.0L);
}

TEST_CASE("associativity and closure, exact") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> u(-20, 20), d(1, 9);
    for (int i = 0; i < 300; ++i) {
        const auto x = exact_point(u(rng), u(rng), u(rng), d(rng));
        const auto y = exact_point(u(rng), u(rng), u(rng), d(rng));
        const auto z = exact_point(u(rng), u(rng), u(rng), d(rng));
        const auto l = heis_mul(heis_mul(x, y), z);
        const auto r = heis_mul(x, heis_mul(y, z));
        CHECK(*l.ez == *r.ez);
        CHECK(*l.ew == *r.ew);
        CHECK(2 * l.ez->re() == l.ew->norm());
    }
}

TEST_CASE("left invariance") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        const auto g = float_point(rng), x = float_point(rng), y = float_point(rng);
        const long double a = cygan_dist(heis_mul(g, x), heis_mul(g, y));
        const long double b = cygan_dist(x, y);
        CHECK(std::fabs(static_cast<double>(a - b)) <= 1e-12 * std::max(1.0, static_cast<double>(b)));
    }
}

TEST_CASE("membership in E'_I") {
    const auto o = OrderSpec::maximal(1);
    const auto I = IdealSpec::unit(o);
    CHECK(is_in_EprimeI(o, I, QuadInt(o, 1), QuadInt(o, 1, 1), QuadInt(o, 1)));
    CHECK(is_in_EprimeI(o, I, QuadInt(o, 0), QuadInt(o, 0), QuadInt(o, 1)));
    CHECK_FALSE(is_in_EprimeI(o, I, QuadInt(o, 1), QuadInt(o, 1), QuadInt(o, 1)));
    const auto nm = OrderSpec::from_omega(1, 0, 4);
    CHECK_THROWS_AS(is_in_EprimeI(nm, IdealSpec::unit(nm), QuadInt(nm, 0), QuadInt(nm, 0), QuadInt(nm, 1)), DomainError);
    // rational points satisfy the constraint exactly
    const HeisRational r{QuadInt(o, 1), QuadInt(o, 1, 1), QuadInt(o, 1)};
    CHECK_NOTHROW(r.point());
}

TEST_CASE("penetration") {
    const auto o1 = OrderSpec::maximal(1);
    CHECK(heis_penetration(QuadInt(o1, 1, 1)) == doctest::Approx(std::log(std::sqrt(2.0)) + std::log(2.0)));
    CHECK(heis_penetration(QuadInt(o1, 1)) == doctest::Approx(std::log(2.0)));
    const auto o3 = OrderSpec::maximal(3);
    CHECK(heis_penetration(QuadInt(o3, 1)) == doctest::Approx(std::log(std::sqrt(3.0))));
    CHECK_THROWS_AS(heis_penetration(QuadInt(o3, 0)), DomainError);
}

TEST_CASE("c' estimate") {
    const auto o = OrderSpec::maximal(1);
    const auto I = IdealSpec::unit(o);
    const HeisPoint x(cld(1, std::sqrt(2.0L)), cld(1, 1));
    const auto r = c_prime_estimate(o, I, x, 144, 1);
    CHECK(r.trace.is_monotone());
    CHECK(r.value > 0);
    CHECK(r.value == doctest::Approx(brute_c_prime(o, I, x, 1, 144)).epsilon(1e-12));
    const auto r2 = c_prime_estimate(o, I, x, 144, 30);
    CHECK(r2.value == doctest::Approx(brute_c_prime(o, I, x, 30, 144)).epsilon(1e-12));
    REQUIRE(r.witness);
    const auto p = r.witness->point();
    CHECK(2 * p.ez->re() == p.ew->norm());

    CHECK_THROWS_WITH_AS(c_prime_estimate(o, I, HeisPoint(KNumber(1, 1), KNumber(1, 1, 1)), 100), doctest::Contains("parabolic"), DomainError);
    const IdealSpec sub(o, {QuadInt(o, 1, 1)});
    CHECK_THROWS_WITH_AS(c_prime_estimate(o, sub, x, 1), doctest::Contains("no admissible"), DomainError);
}

TEST_CASE("serialisation") {
    const auto x = exact_point(3, 2, 1, 4);
    CHECK(x.to_string() == "5/32,3/4;1/2,1/4");
    const auto y = HeisPoint::parse(x.to_string());
    CHECK(y.is_exact());
    CHECK(*y.ez == *x.ez);
    const auto f = HeisPoint::parse("1,1.5;1,1");
    CHECK_FALSE(f.is_exact());
    CHECK_THROWS_AS(HeisPoint::parse("1,2"), std::invalid_argument);
}

}  // TEST_SUITE
