#include <doctest.h>

#include <cmath>
#include <random>

#include "lagspec/contfrac.hpp"

using namespace lagspec;

namespace {

CFWord random_periodic(std::mt19937_64& rng, std::size_t max_len, std::int64_t max_q) {
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<std::int64_t> q(1, max_q);
    std::uniform_int_distribution<std::int64_t> a0(-3, 3);
    CFWord w;
    w.preperiod.push_back(a0(rng));
    const std::size_t pre = len(rng) - 1;
    for (std::size_t i = 0; i < pre; ++i) w.preperiod.push_back(q(rng));
    const std::size_t per = len(rng);
    for (std::size_t i = 0; i < per; ++i) w.period.push_back(q(rng));
    return w;
}

}  // namespace

TEST_SUITE("contfrac") {

TEST_CASE("word text form") {
    const CFWord g = CFWord::parse("[(1)]");
    CHECK(g.preperiod.empty());
    CHECK(g.period == std::vector<std::int64_t>{1});
    const CFWord r2 = CFWord::parse("[1; (2)]");
    CHECK(r2.preperiod == std::vector<std::int64_t>{1});
    CHECK(r2.period == std::vector<std::int64_t>{2});
    CHECK(CFWord::parse("[1;(1)]").to_string() == "[1; (1)]");
    const CFWord w = CFWord::parse("[0; 3, 1, (2, 4)]");
    CHECK(CFWord::parse(w.to_string()) == w);
    CHECK(CFWord::parse("[2]").is_rational());
    const CFWord e = CFWord::parse("[2;1,2,1,1,4,...]");
    CHECK(e.sampled_prefix);
    CHECK(e.preperiod.size() == 6);
    CHECK_THROWS_AS(CFWord::parse("[1;0,(2)]"), std::invalid_argument);
    CHECK_THROWS_AS(CFWord::parse("1;2"), std::invalid_argument);
    CHECK_THROWS_AS(CFWord::parse("[]"), std::invalid_argument);
    CHECK_THROWS_AS(CFWord::parse("[1;(2),3]"), std::invalid_argument);
}

TEST_CASE("expand detects the period exactly") {
    const CFWord g = expand(QuadSurd(1, 1, 5, 2));
    CHECK(g.preperiod.empty());
    CHECK(g.period == std::vector<std::int64_t>{1});
    const CFWord r2 = expand(QuadSurd(0, 1, 2));
    CHECK(r2.preperiod == std::vector<std::int64_t>{1});
    CHECK(r2.period == std::vector<std::int64_t>{2});
    const CFWord r7 = expand(QuadSurd(0, 1, 7));
    CHECK(r7.preperiod == std::vector<std::int64_t>{2});
    CHECK(r7.period == std::vector<std::int64_t>{1, 1, 1, 4});
    CHECK_THROWS_WITH_AS(expand(QuadSurd::rational(3, 7)), "rational input", DomainError);
    const CFWord neg = expand(-QuadSurd(0, 1, 3));
    CHECK(neg.preperiod.front() == -2);
}

TEST_CASE("value_of and expand are inverse on random words") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const CFWord w = random_periodic(rng, 5, 6);
        const QuadSurd x = value_of(w);
        CHECK(expand(x).terms(40) == w.terms(40));
        // the exact value sits between consecutive convergents
        const ConvergentSeq c = convergents(w.terms(12));
        const BigRational lo = BigRational(c.p(10), c.q(10));
        const BigRational hi = BigRational(c.p(11), c.q(11));
        const QuadSurd a = x - QuadSurd::rational(boost::multiprecision::numerator(lo), boost::multiprecision::denominator(lo));
        const QuadSurd b = x - QuadSurd::rational(boost::multiprecision::numerator(hi), boost::multiprecision::denominator(hi));
        CHECK(a.sign() * b.sign() < 0);
    }
}

TEST_CASE("convergent determinant identity") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const CFWord w = random_periodic(rng, 6, 9);
        const ConvergentSeq c = convergents(w.terms(60));
        for (std::size_t n = 1; n < c.size(); ++n) {
            const BigInt det = c.p(n) * c.q(n - 1) - c.p(n - 1) * c.q(n);
            CHECK(det == ((n % 2 == 1) ? 1 : -1));
            CHECK(c.q(n) > c.q(n - 1) - (n == 1 ? 1 : 0));
        }
    }
}

TEST_CASE("constants of the classical examples") {
    const auto g = approx_constant(CFWord::parse("[(1)]"));
    CHECK(g.exact);
    CHECK(g.value == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(*g.exact_value == QuadSurd(0, 1, 5, 5));
    const auto r2 = approx_constant(CFWord::parse("[1; (2)]"));
    CHECK(*r2.exact_value == QuadSurd(0, 1, 2, 4));
    CHECK(r2.value == doctest::Approx(0.3535533906).epsilon(1e-10));
    CHECK_THROWS_WITH_AS(approx_constant(CFWord::parse("[2]")), "rational input", DomainError);
    CHECK_THROWS_AS(approx_constant(CFWord{}), std::invalid_argument);
}

TEST_CASE("constant is the reciprocal of the largest two-sided value") {
    // independent route: lambda_j = 2 sqrt(D) / |Q_j| for the reduced states of
    // the purely periodic number, computed here with doubles
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const CFWord w = random_periodic(rng, 6, 4);
        const std::size_t k = w.period.size();
        double best = 0;
        for (std::size_t j = 0; j < k; ++j) {
            double fwd = 0, bwd = 0;
            for (int rep = 0; rep < 80; ++rep) {
                for (std::size_t t = k; t-- > 0;) fwd = 1.0 / (w.period[(j + t) % k] + fwd);
                for (std::size_t t = k; t-- > 0;) bwd = 1.0 / (w.period[(j + 2 * k - 1 - t) % k] + bwd);
            }
            best = std::max(best, 1.0 / fwd + bwd);
        }
        CHECK(approx_constant(w).value == doctest::Approx(1.0 / best).epsilon(1e-12));
    }
}

TEST_CASE("cyclic shifts and the Hurwitz bound") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        CFWord w = random_periodic(rng, 7, 5);
        const QuadSurd c = *approx_constant(w).exact_value;
        CHECK(c.to_double() <= 1.0 / std::sqrt(5.0) + 1e-12);
        CFWord s = w;
        std::rotate(s.period.begin(), s.period.begin() + 1, s.period.end());
        s.preperiod.push_back(7);
        CHECK(*approx_constant(s).exact_value == c);
    }
}

TEST_CASE("brute force oracle examples") {
    const QuadSurd phi(1, 1, 5, 2);
    CHECK(std::abs(brute_force_constant(phi, 1000).value - 1.0 / std::sqrt(5.0)) < 1e-4);
    const auto r = brute_force_constant(QuadSurd(0, 1, 2), 3);
    CHECK(r.value == doctest::Approx(6.0 - 4.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.q == 2);
    CHECK(r.p == 3);
    const QuadSurd x(3, 1, 7, 5);
    CHECK(brute_force_constant(x, 1).value == doctest::Approx(std::abs(x.to_double() - std::round(x.to_double()))));
}

TEST_CASE("brute force within 1e-9 at Qmax 1e6" * doctest::timeout(60)) {
    for (const char* text : {"[(1)]", "[1; (2)]", "[(2, 2, 1, 1)]", "[0; (1, 3, 2, 4)]"}) {
        const CFWord w = CFWord::parse(text);
        const double c = approx_constant(w).value;
        const double bf = brute_force_constant(value_of(w), 1'000'000).value;
        INFO(std::string(text), " exact=", c, " brute=", bf);
        CHECK(std::abs(bf - c) <= 1e-9);
    }
}

TEST_CASE("sampled prefix of e gives a decreasing estimate") {
    std::vector<std::int64_t> e{2};
    for (std::int64_t k = 1; e.size() < 400; ++k) {
        e.push_back(1);
        e.push_back(2 * k);
        e.push_back(1);
    }
    double last = INFINITY;
    for (std::size_t n : {25, 50, 100, 200, 400}) {
        CFWord w;
        w.preperiod.assign(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n));
        w.sampled_prefix = true;
        const auto est = approx_constant(w);
        CHECK_FALSE(est.exact);
        CHECK(est.trace.is_monotone());
        CHECK(est.value <= last + 1e-15);
        last = est.value;
    }
    CHECK(last < 0.01);
}

TEST_CASE("decimal expansion with a safe length") {
    const CFWord g = expand_decimal("1.6180339887498948482045868343656", 20);
    for (auto a : g.preperiod) CHECK(a == 1);
    CHECK(g.sampled_prefix);
    CHECK_THROWS_AS(expand_decimal("1.618034", 40), DomainError);
    try {
        expand_decimal("1.618034", 40);
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("largest safe n") != std::string::npos);
    }
}

TEST_CASE("Markov numbers and values") {
    const auto t = markov_triples(100);
    std::vector<std::int64_t> tops;
    for (const auto& x : t) {
        CHECK(x.a * x.a + x.b * x.b + x.c * x.c == 3 * x.a * x.b * x.c);
        tops.push_back(x.c);
    }
    CHECK(tops == std::vector<std::int64_t>{1, 2, 5, 13, 29, 34, 89});
    CHECK(markov_value(1) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(markov_value(2) == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-15));
    CHECK(markov_value(5) == doctest::Approx(5.0 / std::sqrt(221.0)).epsilon(1e-15));
    CHECK_FALSE(is_markov_number(3));
    CHECK_THROWS_AS(markov_value(4), DomainError);
}

TEST_CASE("Markov periods reproduce the Markov values exactly") {
    for (std::int64_t m : {1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433}) {
        const auto per = markov_period(m);
        CHECK(periodic_constant(per) == markov_value_exact(m));
    }
    CHECK(markov_period(5) == std::vector<std::int64_t>{1, 1, 2, 2});
}

}
