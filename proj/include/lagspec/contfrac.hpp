#pragma once

// Real continued fractions, the classical constant c(x) and Markov numbers.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lagspec/estimator.hpp"
#include "lagspec/numkit.hpp"

namespace lagspec {

/// Eventually periodic word [a0; a1, ..., (b1, ..., bk)], or a finite
/// prefix. A prefix written with a trailing "..." is a sampled prefix of an
/// irrational; without it the word is a rational number.
struct CFWord {
    std::vector<std::int64_t> preperiod;
    std::vector<std::int64_t> period;
    bool sampled_prefix = false;

    bool is_periodic() const { return !period.empty(); }
    bool is_rational() const { return period.empty() && !sampled_prefix; }
    /// Partial quotient of index n (periodic words are unbounded).
    std::int64_t term(std::size_t n) const;
    std::size_t prefix_length() const { return preperiod.size(); }
    /// First n partial quotients.
    std::vector<std::int64_t> terms(std::size_t n) const;
    void validate() const;
    std::string to_string() const;
    bool operator==(const CFWord&) const = default;

    static CFWord parse(std::string_view text);
};

/// Convergents p_n/q_n, extended one partial quotient at a time.
class ConvergentSeq {
public:
    void push(std::int64_t a);
    std::size_t size() const { return p_.size(); }
    const BigInt& p(std::size_t n) const { return p_.at(n); }
    const BigInt& q(std::size_t n) const { return q_.at(n); }

private:
    std::vector<BigInt> p_;
    std::vector<BigInt> q_;
};

ConvergentSeq convergents(const std::vector<std::int64_t>& terms);

/// Exact value of a periodic word.
QuadSurd value_of(const CFWord& w);
/// Value of a finite word (a rational).
BigRational value_of_finite(const std::vector<std::int64_t>& terms);

/// Expansion of an exact quadratic irrational with its period found by
/// detecting the first repeated (P, Q) state.
CFWord expand(const QuadSurd& x);
/// First n partial quotients of x (no period detection).
std::vector<std::int64_t> expand_terms(const QuadSurd& x, std::size_t n);
/// First n partial quotients of a decimal string, treated as known to
/// +-1/2 in its last digit. Throws DomainError naming the largest safe n.
CFWord expand_decimal(std::string_view decimal, std::size_t n);

struct ConstantEstimate {
    double value = 0;
    bool exact = false;
    std::optional<QuadSurd> exact_value;  // periodic words only
    EstimatorTrace trace{Direction::Min};
    std::size_t window_begin = 0;  // sampled prefixes: convergent indices used
    std::size_t window_end = 0;
};

/// c(x) = liminf q^2 |x - p/q|. Exact for periodic words, a windowed
/// estimate for sampled prefixes.
ConstantEstimate approx_constant(const CFWord& w);
/// 1 / max_j lambda_j over the cyclic positions of a period.
QuadSurd periodic_constant(const std::vector<std::int64_t>& period);

struct BruteForceResult {
    double value = 0;
    std::int64_t q = 0;
    std::int64_t p = 0;
};

/// min of q^2 |x - p/q| over q_min <= q <= q_max, p within one of round(q x).
/// q_min defaults to floor(sqrt(q_max)), which discards the finitely many
/// early denominators that the liminf ignores.
BruteForceResult brute_force_constant(const QuadSurd& x, std::int64_t q_max, std::int64_t q_min = 0);

struct MarkovTriple {
    std::int64_t a, b, c;  // a <= b <= c
};

/// All Markov triples with largest entry <= bound, sorted by largest entry.
std::vector<MarkovTriple> markov_triples(std::int64_t bound);
bool is_markov_number(std::int64_t m);
/// m / sqrt(9 m^2 - 4); throws DomainError if m is not a Markov number.
double markov_value(std::int64_t m);
QuadSurd markov_value_exact(std::int64_t m);
/// Period of a quadratic irrational whose constant is markov_value(m).
std::vector<std::int64_t> markov_period(std::int64_t m);

}  // namespace lagspec
