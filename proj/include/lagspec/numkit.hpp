#pragma once

// Exact arithmetic shared by every other module: checked 64-bit helpers,
// orders Z + wZ in imaginary quadratic fields, their ideals (kept as
// two-element Z-bases in Hermite normal form), exact elements of Q(sqrt(-k)),
// exact real quadratic surds, and a small literal parser.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lagspec {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Raised when an input violates a mathematical precondition (rational
/// points, zero ideals, parabolic elements...). Parse failures use
/// std::invalid_argument instead.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

std::int64_t checked_add(std::int64_t x, std::int64_t y);
std::int64_t checked_sub(std::int64_t x, std::int64_t y);
std::int64_t checked_mul(std::int64_t x, std::int64_t y);
std::int64_t floor_div(std::int64_t x, std::int64_t y);
std::int64_t isqrt(std::int64_t n);
BigInt isqrt(const BigInt& n);
bool is_perfect_square(std::int64_t n);
bool is_squarefree(std::int64_t n);
long double to_long_double(const BigInt& x);
long double to_long_double(const BigRational& x);

/// The order Z + wZ with w = (u + v*sqrt(-m))/2 an algebraic integer of
/// positive imaginary part. m = 0 encodes the rank-one ring Z itself, used by
/// the real (modular group) setting.
class OrderSpec {
public:
    static OrderSpec integers();
    /// Ring of integers of Q(sqrt(-m)).
    static OrderSpec maximal(std::int64_t m);
    /// Explicit w = (u + v sqrt(-m))/2; throws unless w is integral.
    static OrderSpec from_omega(std::int64_t m, std::int64_t u, std::int64_t v);

    std::int64_t m() const { return m_; }
    /// w^2 = trace_omega() * w - norm_omega()
    std::int64_t trace_omega() const { return u_; }
    std::int64_t norm_omega() const { return n_; }
    std::int64_t u() const { return u_; }
    std::int64_t v() const { return v_; }
    bool is_real() const { return m_ == 0; }
    int rank() const { return is_real() ? 1 : 2; }
    bool is_maximal() const;
    /// Discriminant of the order, -m v^2.
    std::int64_t discriminant() const { return -m_ * v_ * v_; }
    std::complex<double> omega() const;
    double im_omega() const;
    /// Norm-Euclidean maximal orders (m = 1, 2, 3, 7, 11) and Z.
    bool is_euclidean() const;
    std::string to_string() const;

    bool operator==(const OrderSpec&) const = default;

private:
    OrderSpec(std::int64_t m, std::int64_t u, std::int64_t v);
    std::int64_t m_ = 0;
    std::int64_t u_ = 0;
    std::int64_t v_ = 0;
    std::int64_t n_ = 0;
};

/// a + b*w in an order. Arithmetic is overflow-checked.
class QuadInt {
public:
    QuadInt() : order_(OrderSpec::integers()) {}
    QuadInt(const OrderSpec& order, std::int64_t a, std::int64_t b = 0);

    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }
    const OrderSpec& order() const { return order_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    QuadInt conj() const;
    std::int64_t norm() const;
    /// 2 Re(x) as an exact integer.
    std::int64_t twice_re() const;
    std::complex<double> value() const;
    double abs() const { return std::abs(value()); }
    std::string to_string() const;

    QuadInt operator-() const;
    QuadInt operator+(const QuadInt& y) const;
    QuadInt operator-(const QuadInt& y) const;
    QuadInt operator*(const QuadInt& y) const;
    bool operator==(const QuadInt& y) const { return a_ == y.a_ && b_ == y.b_ && order_ == y.order_; }
    bool operator<(const QuadInt& y) const { return a_ != y.a_ ? a_ < y.a_ : b_ < y.b_; }

    /// Parses "a+b*w", "a", "b*w", "-w" (whitespace ignored).
    static QuadInt parse(const OrderSpec& order, std::string_view text);

private:
    OrderSpec order_;
    std::int64_t a_ = 0;
    std::int64_t b_ = 0;
};

std::int64_t quad_norm(const QuadInt& x);

/// x / y when the quotient lies in the order.
std::optional<QuadInt> exact_div(const QuadInt& x, const QuadInt& y);
/// Lattice point of the order nearest to x / y (ties broken toward smaller coordinates).
QuadInt nearest_quotient(const QuadInt& x, const QuadInt& y);
/// Lattice point nearest to a complex number.
QuadInt nearest_element(const OrderSpec& order, std::complex<double> z);

struct Bezout {
    QuadInt gcd;
    QuadInt s;
    QuadInt t;  // s*x + t*y == gcd
};
/// Extended Euclid; only for norm-Euclidean orders.
Bezout xgcd(const QuadInt& x, const QuadInt& y);

/// Units of the order (finite; +-1 for Z).
std::vector<QuadInt> units(const OrderSpec& order);

/// Nonzero ideal of an order, stored by generators plus the HNF Z-basis
/// {n1, t + n2*w} (rank one: {n1}).
class IdealSpec {
public:
    IdealSpec(const OrderSpec& order, std::vector<QuadInt> generators);
    static IdealSpec unit(const OrderSpec& order);

    const OrderSpec& order() const { return order_; }
    const std::vector<QuadInt>& generators() const { return generators_; }
    std::pair<QuadInt, QuadInt> basis() const;
    std::int64_t hnf_n1() const { return n1_; }
    std::int64_t hnf_t() const { return t_; }
    std::int64_t hnf_n2() const { return n2_; }
    /// Index in the order, i.e. the absolute norm of the ideal.
    std::int64_t index() const { return n1_ * n2_; }
    bool is_unit() const { return index() == 1; }
    bool contains(const QuadInt& x) const;
    /// Both ideals are equal as lattices.
    bool same_lattice(const IdealSpec& other) const;
    std::string to_string() const;

    /// Comma-separated generators, e.g. "1+w" or "2,1+w".
    static IdealSpec parse(const OrderSpec& order, std::string_view text);

private:
    OrderSpec order_;
    std::vector<QuadInt> generators_;
    std::int64_t n1_ = 1;
    std::int64_t t_ = 0;
    std::int64_t n2_ = 1;
};

bool ideal_contains(const IdealSpec& ideal, const QuadInt& x);
/// True iff the generators span the whole order; throws DomainError on all-zero input.
bool ideal_is_unit(std::span<const QuadInt> generators);

/// Exact element re + im*sqrt(-k) of Q(sqrt(-k)), k >= 1 squarefree.
class KNumber {
public:
    KNumber() = default;
    KNumber(std::int64_t k, BigRational re, BigRational im = 0);
    static KNumber from(const QuadInt& x);

    std::int64_t k() const { return k_; }
    const BigRational& re() const { return re_; }
    /// Coefficient of sqrt(-k); the imaginary part is im() * sqrt(k).
    const BigRational& im_coeff() const { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }
    KNumber conj() const { return {k_, re_, -im_}; }
    BigRational norm() const { return re_ * re_ + k_ * im_ * im_; }
    std::complex<double> value() const;
    std::complex<long double> value_ld() const;
    std::string to_string() const;

    KNumber operator-() const { return {k_, -re_, -im_}; }
    KNumber operator+(const KNumber& y) const;
    KNumber operator-(const KNumber& y) const;
    KNumber operator*(const KNumber& y) const;
    KNumber operator/(const KNumber& y) const;
    bool operator==(const KNumber& y) const;

private:
    void require_same_field(const KNumber& y) const;
    std::int64_t k_ = 1;
    BigRational re_ = 0;
    BigRational im_ = 0;
};

/// Exact real number (a + b*sqrt(d))/c with d >= 2 squarefree (or b = 0), c > 0.
class QuadSurd {
public:
    QuadSurd() = default;
    /// Any positive d is accepted; square factors move into b.
    QuadSurd(BigInt a, BigInt b, std::int64_t d, BigInt c = 1);
    static QuadSurd rational(BigInt p, BigInt q = 1);

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    std::int64_t d() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    int sign() const;
    QuadSurd conj() const;
    BigInt floor() const;
    long double to_long_double() const;
    double to_double() const { return static_cast<double>(to_long_double()); }
    /// c*x + d evaluated with full relative precision.
    long double linear(const BigInt& c, const BigInt& d) const;
    std::string to_string() const;

    QuadSurd operator-() const;
    QuadSurd operator+(const QuadSurd& y) const;
    QuadSurd operator-(const QuadSurd& y) const;
    QuadSurd operator*(const QuadSurd& y) const;
    QuadSurd operator/(const QuadSurd& y) const;
    bool operator==(const QuadSurd& y) const;
    bool operator<(const QuadSurd& y) const { return (*this - y).sign() < 0; }
    bool operator>(const QuadSurd& y) const { return y < *this; }

private:
    void normalize();
    std::int64_t common_d(const QuadSurd& y) const;
    BigInt a_ = 0;
    BigInt b_ = 0;
    BigInt c_ = 1;
    std::int64_t d_ = 0;
};

/// Result of parsing a numeric literal such as "(1+sqrt5)/2", "(1+i*sqrt3)/2"
/// or "0.25+0.4i". Exact when the literal only uses integers, i and one
/// square root; decimal points make it inexact.
struct Literal {
    bool exact = true;
    BigRational re = 0;
    BigRational radical_coeff = 0;
    std::int64_t radicand = 0;  // value is re + radical_coeff * sqrt(radicand); radicand < 0 is imaginary
    std::complex<long double> approx;

    bool is_real() const { return radical_coeff == 0 || radicand > 0; }
    std::optional<QuadSurd> as_surd() const;
    std::optional<KNumber> as_knumber() const;
};

Literal parse_literal(std::string_view text);

}  // namespace lagspec
