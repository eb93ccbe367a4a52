#pragma once

// The Heisenberg group {(z, w) : 2 Re z = |w|^2} with n = 2, its modified
// Cygan distance, the rational family E'_I and the constant c'_I.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lagspec/estimator.hpp"
#include "lagspec/numkit.hpp"

namespace lagspec {

/// Point of Heis_3(R). Exact points carry coordinates in Q(sqrt(-k)).
struct HeisPoint {
    std::complex<long double> z;
    std::complex<long double> w;
    std::optional<KNumber> ez, ew;

    HeisPoint() = default;
    /// Throws DomainError unless |2 Re z - |w|^2| <= 1e-12 (1 + |w|^2).
    HeisPoint(std::complex<long double> z, std::complex<long double> w);
    /// Throws DomainError unless 2 Re z == |w|^2 exactly.
    HeisPoint(const KNumber& z, const KNumber& w);

    bool is_exact() const { return ez.has_value(); }
    /// "z_re,z_im;w_re,w_im", rational components when exact.
    std::string to_string() const;
    /// Inverse of to_string; components may be integers, fractions or decimals.
    static HeisPoint parse(std::string_view text, std::int64_t k = 1);
};

HeisPoint heis_mul(const HeisPoint& x, const HeisPoint& y);
HeisPoint heis_inverse(const HeisPoint& x);
/// sqrt(2|z| + |w|^2) of x^-1 y.
long double cygan_dist(const HeisPoint& x, const HeisPoint& y);

/// Rational point (a/c, alpha/c) with (a, alpha, c) in E'_I.
struct HeisRational {
    QuadInt a, alpha, c;
    HeisPoint point() const;
};

/// (a, alpha, c) in O x I x I with 2 Re(a conj(c)) = |alpha|^2 and
/// <a, alpha, c> = O. Needs the maximal order.
bool is_in_EprimeI(const OrderSpec& order, const IdealSpec& ideal, const QuadInt& a, const QuadInt& alpha, const QuadInt& c);

struct CPrimeEstimate {
    double value = 0;
    EstimatorTrace trace{Direction::Min};
    std::optional<HeisRational> witness;
    std::int64_t min_norm = 0;
    bool heuristic_rational_check = false;
};

/// min over E'_I triples with min_norm <= N(c) <= norm_bound of
/// |c| d(x, (a/c, alpha/c)). min_norm = 0 selects ceil(sqrt(norm_bound)).
CPrimeEstimate c_prime_estimate(const OrderSpec& order, const IdealSpec& ideal, const HeisPoint& x, std::int64_t norm_bound,
                                std::int64_t min_norm = 0);

/// log|c| + log(2 Im w).
double heis_penetration(const QuadInt& c);

}  // namespace lagspec
