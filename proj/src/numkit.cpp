#include "lagspec/numkit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace lagspec {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("int64 overflow in addition");
    return r;
}

std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("int64 overflow in subtraction");
    return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("int64 overflow in multiplication");
    return r;
}

std::int64_t floor_div(std::int64_t x, std::int64_t y) {
    std::int64_t q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return q;
}

std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<__int128>(r) * r > n) --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative number");
    return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(std::int64_t n) {
    if (n < 0) return false;
    const auto r = isqrt(n);
    return r * r == n;
}

bool is_squarefree(std::int64_t n) {
    if (n <= 0) return false;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

long double to_long_double(const BigInt& x) { return x.convert_to<long double>(); }

long double to_long_double(const BigRational& x) {
    return to_long_double(boost::multiprecision::numerator(x)) /
           to_long_double(boost::multiprecision::denominator(x));
}

// ---------------------------------------------------------------- OrderSpec

OrderSpec::OrderSpec(std::int64_t m, std::int64_t u, std::int64_t v) : m_(m), u_(u), v_(v) {
    if (m == 0) {
        u_ = v_ = n_ = 0;
        return;
    }
    if (m < 0 || !is_squarefree(m)) throw std::invalid_argument("m must be a squarefree positive integer");
    if (v <= 0) throw std::invalid_argument("omega must have positive imaginary part");
    const std::int64_t num = checked_add(checked_mul(u, u), checked_mul(m, checked_mul(v, v)));
    if (num % 4 != 0) throw std::invalid_argument("omega is not an algebraic integer");
    n_ = num / 4;
}

OrderSpec OrderSpec::integers() { return OrderSpec(0, 0, 0); }

OrderSpec OrderSpec::maximal(std::int64_t m) {
    if (m <= 0) throw std::invalid_argument("m must be a squarefree positive integer");
    if (m % 4 == 3) return OrderSpec(m, 1, 1);
    return OrderSpec(m, 0, 2);
}

OrderSpec OrderSpec::from_omega(std::int64_t m, std::int64_t u, std::int64_t v) {
    if (m <= 0) throw std::invalid_argument("m must be a squarefree positive integer");
    return OrderSpec(m, u, v);
}

bool OrderSpec::is_maximal() const {
    if (is_real()) return true;
    return m_ % 4 == 3 ? v_ == 1 : v_ == 2;
}

std::complex<double> OrderSpec::omega() const {
    if (is_real()) return {0.0, 0.0};
    return {static_cast<double>(u_) / 2.0, static_cast<double>(v_) * std::sqrt(static_cast<double>(m_)) / 2.0};
}

double OrderSpec::im_omega() const { return omega().imag(); }

bool OrderSpec::is_euclidean() const {
    if (is_real()) return true;
    if (!is_maximal()) return false;
    return m_ == 1 || m_ == 2 || m_ == 3 || m_ == 7 || m_ == 11;
}

std::string OrderSpec::to_string() const {
    if (is_real()) return "Z";
    std::ostringstream os;
    os << "Z[(" << u_ << "+" << v_ << "*sqrt(-" << m_ << "))/2]";
    return os.str();
}

// ------------------------------------------------------------------ QuadInt

QuadInt::QuadInt(const OrderSpec& order, std::int64_t a, std::int64_t b) : order_(order), a_(a), b_(b) {
    if (order.is_real() && b != 0) throw std::invalid_argument("Z has no w coordinate");
}

QuadInt QuadInt::conj() const {
    return {order_, checked_add(a_, checked_mul(b_, order_.trace_omega())), -b_};
}

std::int64_t QuadInt::norm() const {
    if (order_.is_real()) return checked_mul(a_, a_);
    const auto t1 = checked_mul(a_, a_);
    const auto t2 = checked_mul(checked_mul(a_, b_), order_.trace_omega());
    const auto t3 = checked_mul(checked_mul(b_, b_), order_.norm_omega());
    return checked_add(checked_add(t1, t2), t3);
}

std::int64_t QuadInt::twice_re() const {
    return checked_add(checked_mul(2, a_), checked_mul(b_, order_.u()));
}

std::complex<double> QuadInt::value() const {
    return static_cast<double>(a_) + static_cast<double>(b_) * order_.omega();
}

std::string QuadInt::to_string() const {
    if (b_ == 0) return std::to_string(a_);
    std::string out;
    if (a_ != 0) out = std::to_string(a_);
    if (b_ == 1) {
        out += a_ != 0 ? "+w" : "w";
    } else if (b_ == -1) {
        out += "-w";
    } else {
        if (b_ > 0 && a_ != 0) out += "+";
        out += std::to_string(b_) + "*w";
    }
    return out;
}

QuadInt QuadInt::operator-() const { return {order_, checked_sub(0, a_), checked_sub(0, b_)}; }

QuadInt QuadInt::operator+(const QuadInt& y) const {
    if (!(order_ == y.order_)) throw std::invalid_argument("mixed orders");
    return {order_, checked_add(a_, y.a_), checked_add(b_, y.b_)};
}

QuadInt QuadInt::operator-(const QuadInt& y) const {
    if (!(order_ == y.order_)) throw std::invalid_argument("mixed orders");
    return {order_, checked_sub(a_, y.a_), checked_sub(b_, y.b_)};
}

QuadInt QuadInt::operator*(const QuadInt& y) const {
    if (!(order_ == y.order_)) throw std::invalid_argument("mixed orders");
    const auto bd = checked_mul(b_, y.b_);
    const auto re = checked_sub(checked_mul(a_, y.a_), checked_mul(bd, order_.norm_omega()));
    const auto om = checked_add(checked_add(checked_mul(a_, y.b_), checked_mul(b_, y.a_)),
                                checked_mul(bd, order_.trace_omega()));
    return {order_, re, om};
}

namespace {

std::string strip_spaces(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    return s;
}

}  // namespace

QuadInt QuadInt::parse(const OrderSpec& order, std::string_view text) {
    const std::string s = strip_spaces(text);
    if (s.empty()) throw std::invalid_argument("empty ring element");
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw std::invalid_argument("malformed ring element: " + s);
        }
        std::int64_t coeff = 1;
        bool have_digits = false;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::size_t used = 0;
            coeff = std::stoll(s.substr(pos), &used);
            pos += used;
            have_digits = true;
        }
        bool is_w = false;
        if (pos < s.size() && s[pos] == '*') {
            ++pos;
            if (pos >= s.size() || s[pos] != 'w') throw std::invalid_argument("malformed ring element: " + s);
        }
        if (pos < s.size() && s[pos] == 'w') {
            is_w = true;
            ++pos;
        }
        if (!have_digits && !is_w) throw std::invalid_argument("malformed ring element: " + s);
        if (is_w) {
            b = checked_add(b, sign * coeff);
        } else {
            a = checked_add(a, sign * coeff);
        }
    }
    if (order.is_real() && b != 0) throw std::invalid_argument("w is not available over Z");
    return {order, a, b};
}

std::int64_t quad_norm(const QuadInt& x) { return x.norm(); }

std::optional<QuadInt> exact_div(const QuadInt& x, const QuadInt& y) {
    const auto n = y.norm();
    if (n == 0) throw DomainError("division by zero");
    const QuadInt num = x * y.conj();
    if (num.a() % n != 0 || num.b() % n != 0) return std::nullopt;
    return QuadInt(x.order(), num.a() / n, num.b() / n);
}

QuadInt nearest_element(const OrderSpec& order, std::complex<double> z) {
    if (order.is_real()) return {order, static_cast<std::int64_t>(std::llround(z.real()))};
    const auto w = order.omega();
    const double yb = z.imag() / w.imag();
    const double xa = z.real() - yb * w.real();
    const auto a0 = static_cast<std::int64_t>(std::llround(xa));
    const auto b0 = static_cast<std::int64_t>(std::llround(yb));
    QuadInt best(order, a0, b0);
    double best_d = std::abs(z - best.value());
    for (std::int64_t da = -1; da <= 1; ++da) {
        for (std::int64_t db = -1; db <= 1; ++db) {
            QuadInt cand(order, a0 + da, b0 + db);
            const double d = std::abs(z - cand.value());
            if (d < best_d - 1e-15) {
                best = cand;
                best_d = d;
            }
        }
    }
    return best;
}

QuadInt nearest_quotient(const QuadInt& x, const QuadInt& y) {
    if (y.is_zero()) throw DomainError("division by zero");
    const QuadInt num = x * y.conj();
    const double n = static_cast<double>(y.norm());
    const std::complex<double> z = num.value() / n;
    return nearest_element(x.order(), z);
}

Bezout xgcd(const QuadInt& x, const QuadInt& y) {
    const OrderSpec& order = x.order();
    if (!order.is_euclidean()) throw DomainError("extended gcd needs a norm-Euclidean order");
    QuadInt r0 = x, r1 = y;
    QuadInt s0(order, 1), s1(order, 0);
    QuadInt t0(order, 0), t1(order, 1);
    while (!r1.is_zero()) {
        const QuadInt q = nearest_quotient(r0, r1);
        QuadInt r2 = r0 - q * r1;
        if (r2.norm() >= r1.norm()) throw DomainError("Euclidean step failed to reduce the norm");
        QuadInt s2 = s0 - q * s1;
        QuadInt t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    return {r0, s0, t0};
}

std::vector<QuadInt> units(const OrderSpec& order) {
    std::vector<QuadInt> out;
    if (order.is_real()) return {QuadInt(order, 1), QuadInt(order, -1)};
    for (std::int64_t a = -2; a <= 2; ++a) {
        for (std::int64_t b = -2; b <= 2; ++b) {
            QuadInt u(order, a, b);
            if (u.norm() == 1) out.push_back(u);
        }
    }
    return out;
}

// ---------------------------------------------------------------- IdealSpec

namespace {

struct Egcd {
    std::int64_t g, s, t;
};

Egcd egcd(std::int64_t a, std::int64_t b) {
    std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, checked_sub(r0, checked_mul(q, r1)));
        std::tie(s0, s1) = std::make_pair(s1, checked_sub(s0, checked_mul(q, s1)));
        std::tie(t0, t1) = std::make_pair(t1, checked_sub(t0, checked_mul(q, t1)));
    }
    if (r0 < 0) return {-r0, -s0, -t0};
    return {r0, s0, t0};
}

std::int64_t pos_mod(std::int64_t x, std::int64_t n) {
    const std::int64_t r = x % n;
    return r < 0 ? r + n : r;
}

}  // namespace

IdealSpec::IdealSpec(const OrderSpec& order, std::vector<QuadInt> generators)
    : order_(order), generators_(std::move(generators)) {
    if (generators_.empty()) throw std::invalid_argument("ideal needs at least one generator");
    bool all_zero = true;
    for (const auto& g : generators_) {
        if (!(g.order() == order_)) throw std::invalid_argument("generator from a different order");
        all_zero = all_zero && g.is_zero();
    }
    if (all_zero) throw DomainError("zero ideal");

    if (order_.is_real()) {
        std::int64_t g = 0;
        for (const auto& x : generators_) g = std::gcd(g, x.a());
        n1_ = std::abs(g);
        t_ = 0;
        n2_ = 1;
        return;
    }

    // Z-module generated by g and g*w for every generator g.
    std::vector<std::pair<std::int64_t, std::int64_t>> vecs;
    const QuadInt w(order_, 0, 1);
    for (const auto& g : generators_) {
        vecs.emplace_back(g.a(), g.b());
        const QuadInt gw = g * w;
        vecs.emplace_back(gw.a(), gw.b());
    }
    std::int64_t xg = 0;
    std::int64_t ax = 0, ay = 0;
    for (const auto& [x, y] : vecs) {
        if (y == 0) {
            xg = std::gcd(xg, x);
            continue;
        }
        if (ay == 0) {
            ax = x;
            ay = y;
            continue;
        }
        const Egcd e = egcd(ay, y);
        const std::int64_t nx = checked_add(checked_mul(e.s, ax), checked_mul(e.t, x));
        const std::int64_t kx = checked_sub(checked_mul(y / e.g, ax), checked_mul(ay / e.g, x));
        xg = std::gcd(xg, kx);
        ax = nx;
        ay = e.g;
    }
    if (ay < 0) {
        ax = -ax;
        ay = -ay;
    }
    n1_ = std::abs(xg);
    n2_ = ay;
    if (n1_ == 0 || n2_ == 0) throw DomainError("degenerate ideal lattice");
    t_ = pos_mod(ax, n1_);
}

IdealSpec IdealSpec::unit(const OrderSpec& order) { return IdealSpec(order, {QuadInt(order, 1)}); }

std::pair<QuadInt, QuadInt> IdealSpec::basis() const {
    if (order_.is_real()) return {QuadInt(order_, n1_), QuadInt(order_, 0)};
    return {QuadInt(order_, n1_, 0), QuadInt(order_, t_, n2_)};
}

bool IdealSpec::contains(const QuadInt& x) const {
    if (!(x.order() == order_)) throw std::invalid_argument("element from a different order");
    if (order_.is_real()) return x.a() % n1_ == 0;
    if (x.b() % n2_ != 0) return false;
    const std::int64_t k = x.b() / n2_;
    return checked_sub(x.a(), checked_mul(k, t_)) % n1_ == 0;
}

bool IdealSpec::same_lattice(const IdealSpec& other) const {
    return order_ == other.order_ && n1_ == other.n1_ && t_ == other.t_ && n2_ == other.n2_;
}

std::string IdealSpec::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (i) out += ",";
        out += generators_[i].to_string();
    }
    return out;
}

IdealSpec IdealSpec::parse(const OrderSpec& order, std::string_view text) {
    std::vector<QuadInt> gens;
    std::string s = strip_spaces(text);
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        gens.push_back(QuadInt::parse(order, piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return IdealSpec(order, std::move(gens));
}

bool ideal_contains(const IdealSpec& ideal, const QuadInt& x) { return ideal.contains(x); }

bool ideal_is_unit(std::span<const QuadInt> generators) {
    if (generators.empty()) throw std::invalid_argument("no generators");
    return IdealSpec(generators.front().order(), {generators.begin(), generators.end()}).is_unit();
}

// ------------------------------------------------------------------ KNumber

KNumber::KNumber(std::int64_t k, BigRational re, BigRational im) : k_(k), re_(std::move(re)), im_(std::move(im)) {
    if (!is_squarefree(k)) throw std::invalid_argument("KNumber needs squarefree k >= 1");
}

KNumber KNumber::from(const QuadInt& x) {
    const OrderSpec& o = x.order();
    if (o.is_real()) return KNumber(1, BigRational(x.a()), 0);
    // a + b (u + v sqrt(-m))/2
    BigRational re = BigRational(x.a()) + BigRational(x.b() * o.u(), 2);
    BigRational im = BigRational(x.b() * o.v(), 2);
    return KNumber(o.m(), re, im);
}

void KNumber::require_same_field(const KNumber& y) const {
    if (k_ != y.k_ && im_ != 0 && y.im_ != 0) throw DomainError("elements of different quadratic fields");
}

KNumber KNumber::operator+(const KNumber& y) const {
    require_same_field(y);
    return {im_ != 0 ? k_ : y.k_, re_ + y.re_, im_ + y.im_};
}

KNumber KNumber::operator-(const KNumber& y) const { return *this + (-y); }

KNumber KNumber::operator*(const KNumber& y) const {
    require_same_field(y);
    const std::int64_t k = im_ != 0 ? k_ : y.k_;
    return {k, re_ * y.re_ - k * im_ * y.im_, re_ * y.im_ + im_ * y.re_};
}

KNumber KNumber::operator/(const KNumber& y) const {
    if (y.is_zero()) throw DomainError("division by zero");
    const BigRational n = y.norm();
    const KNumber num = *this * y.conj();
    return {num.k_, num.re_ / n, num.im_ / n};
}

bool KNumber::operator==(const KNumber& y) const {
    if (re_ != y.re_ || im_ != y.im_) return false;
    return im_ == 0 || k_ == y.k_;
}

std::complex<double> KNumber::value() const {
    const auto v = value_ld();
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::complex<long double> KNumber::value_ld() const {
    return {to_long_double(re_), to_long_double(im_) * std::sqrt(static_cast<long double>(k_))};
}

std::string KNumber::to_string() const {
    std::ostringstream os;
    os << re_;
    if (im_ != 0) {
        os << (im_ > 0 ? "+" : "-") << boost::multiprecision::abs(im_) << "*i";
        if (k_ != 1) os << "*sqrt(" << k_ << ")";
    }
    return os.str();
}

// ----------------------------------------------------------------- QuadSurd

namespace {

// (A + B sqrt(d)) / C with C > 0, evaluated without cancellation.
long double stable_eval(const BigInt& A, const BigInt& B, std::int64_t d, const BigInt& C) {
    const long double c = to_long_double(C);
    if (B == 0 || d == 0) return to_long_double(A) / c;
    const long double root = std::sqrt(static_cast<long double>(d));
    const int sa = A.sign();
    const int sb = B.sign();
    if (sa == 0 || sa == sb) return (to_long_double(A) + to_long_double(B) * root) / c;
    const BigInt num = A * A - B * B * d;
    const long double den = to_long_double(A) - to_long_double(B) * root;
    return to_long_double(num) / den / c;
}

}  // namespace

QuadSurd::QuadSurd(BigInt a, BigInt b, std::int64_t d, BigInt c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(d) {
    if (c_ == 0) throw DomainError("zero denominator");
    if (d_ < 0) throw std::invalid_argument("QuadSurd needs d >= 0");
    normalize();
}

QuadSurd QuadSurd::rational(BigInt p, BigInt q) { return QuadSurd(std::move(p), 0, 0, std::move(q)); }

void QuadSurd::normalize() {
    if (b_ != 0 && d_ > 1) {
        std::int64_t rest = d_;
        std::int64_t square = 1;
        for (std::int64_t p = 2; p * p <= rest; ++p) {
            while (rest % (p * p) == 0) {
                rest /= p * p;
                square *= p;
            }
        }
        b_ *= square;
        d_ = rest;
    }
    if (b_ != 0 && d_ == 1) {
        a_ += b_;
        b_ = 0;
    }
    if (b_ == 0 || d_ == 0) {
        b_ = 0;
        d_ = 0;
    }
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    BigInt g = boost::multiprecision::gcd(boost::multiprecision::gcd(a_, b_), c_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

std::int64_t QuadSurd::common_d(const QuadSurd& y) const {
    if (is_rational()) return y.d_;
    if (y.is_rational()) return d_;
    if (d_ != y.d_) throw DomainError("surds from different quadratic fields");
    return d_;
}

int QuadSurd::sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    const BigInt lhs = a_ * a_;
    const BigInt rhs = b_ * b_ * d_;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
}

QuadSurd QuadSurd::conj() const { return QuadSurd(a_, -b_, d_, c_); }

BigInt QuadSurd::floor() const {
    auto fdiv = [](const BigInt& x, const BigInt& y) {
        BigInt q = x / y;
        if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
        return q;
    };
    if (is_rational()) return fdiv(a_, c_);
    const BigInt s = isqrt(b_ * b_ * d_);
    if (b_ > 0) return fdiv(a_ + s, c_);
    return fdiv(a_ - s - 1, c_);
}

long double QuadSurd::to_long_double() const { return stable_eval(a_, b_, d_, c_); }

long double QuadSurd::linear(const BigInt& c, const BigInt& d) const {
    return stable_eval(c * a_ + d * c_, c * b_, d_, c_);
}

std::string QuadSurd::to_string() const {
    std::ostringstream os;
    if (is_rational()) {
        os << a_;
        if (c_ != 1) os << "/" << c_;
        return os.str();
    }
    os << "(" << a_ << (b_ < 0 ? "-" : "+") << boost::multiprecision::abs(b_) << "*sqrt(" << d_ << "))";
    if (c_ != 1) os << "/" << c_;
    return os.str();
}

QuadSurd QuadSurd::operator-() const { return QuadSurd(-a_, -b_, d_, c_); }

QuadSurd QuadSurd::operator+(const QuadSurd& y) const {
    const std::int64_t d = common_d(y);
    return QuadSurd(a_ * y.c_ + y.a_ * c_, b_ * y.c_ + y.b_ * c_, d, c_ * y.c_);
}

QuadSurd QuadSurd::operator-(const QuadSurd& y) const { return *this + (-y); }

QuadSurd QuadSurd::operator*(const QuadSurd& y) const {
    const std::int64_t d = common_d(y);
    return QuadSurd(a_ * y.a_ + b_ * y.b_ * d, a_ * y.b_ + b_ * y.a_, d, c_ * y.c_);
}

QuadSurd QuadSurd::operator/(const QuadSurd& y) const {
    if (y.sign() == 0) throw DomainError("division by zero");
    const std::int64_t d = common_d(y);
    const BigInt n = y.a_ * y.a_ - y.b_ * y.b_ * d;
    // y^{-1} = y.c (y.a - y.b sqrt d) / n
    const QuadSurd inv(y.c_ * y.a_, -y.c_ * y.b_, d, n);
    return *this * inv;
}

bool QuadSurd::operator==(const QuadSurd& y) const {
    return a_ == y.a_ && b_ == y.b_ && c_ == y.c_ && (is_rational() || d_ == y.d_);
}

// ------------------------------------------------------------------ Literal

namespace {

struct Value {
    BigRational r = 0;
    BigRational s = 0;
    std::int64_t rad = 0;
    bool exact = true;
    std::complex<long double> approx{0, 0};
};

std::int64_t merge_rad(const Value& x, const Value& y) {
    if (x.s == 0) return y.rad;
    if (y.s == 0) return x.rad;
    if (x.rad != y.rad) throw std::invalid_argument("literal mixes different square roots");
    return x.rad;
}

Value add(const Value& x, const Value& y) {
    Value out;
    out.rad = merge_rad(x, y);
    out.r = x.r + y.r;
    out.s = x.s + y.s;
    out.exact = x.exact && y.exact;
    out.approx = x.approx + y.approx;
    if (out.s == 0) out.rad = 0;
    return out;
}

Value neg(Value x) {
    x.r = -x.r;
    x.s = -x.s;
    x.approx = -x.approx;
    return x;
}

Value radical(std::int64_t k);

Value mul(const Value& x, const Value& y) {
    if (x.s != 0 && y.s != 0 && x.rad != y.rad && x.r == 0 && y.r == 0) {
        // product of two pure radicals, e.g. i*sqrt3
        Value out = radical(checked_mul(x.rad, y.rad));
        const BigRational scale = (x.rad < 0 && y.rad < 0 ? -1 : 1) * x.s * y.s;
        out.r *= scale;
        out.s *= scale;
        out.exact = x.exact && y.exact;
        out.approx = x.approx * y.approx;
        return out;
    }
    Value out;
    out.rad = merge_rad(x, y);
    out.r = x.r * y.r + x.s * y.s * out.rad;
    out.s = x.r * y.s + x.s * y.r;
    out.exact = x.exact && y.exact;
    out.approx = x.approx * y.approx;
    if (out.s == 0) out.rad = 0;
    return out;
}

Value div(const Value& x, const Value& y) {
    const BigRational n = y.r * y.r - y.s * y.s * y.rad;
    if (n == 0) throw DomainError("division by zero in literal");
    Value inv;
    inv.rad = y.rad;
    inv.r = y.r / n;
    inv.s = -y.s / n;
    inv.exact = y.exact;
    inv.approx = std::complex<long double>(1.0L) / y.approx;
    Value out = mul(x, inv);
    out.approx = x.approx / y.approx;
    return out;
}

Value radical(std::int64_t k) {
    // sqrt(k) for k > 0, i*sqrt(-k) for k < 0
    Value v;
    const std::int64_t mag = std::abs(k);
    std::int64_t rest = mag, square = 1;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        while (rest % (p * p) == 0) {
            rest /= p * p;
            square *= p;
        }
    }
    const long double root = std::sqrt(static_cast<long double>(mag));
    v.approx = k > 0 ? std::complex<long double>(root, 0) : std::complex<long double>(0, root);
    if (rest == 1 && k > 0) {
        v.r = square;
    } else {
        v.s = square;
        v.rad = k > 0 ? rest : -rest;
    }
    return v;
}

class LiteralParser {
public:
    explicit LiteralParser(std::string text) : s_(std::move(text)) {}

    Value parse() {
        Value v = expr();
        if (pos_ != s_.size()) fail();
        return v;
    }

private:
    [[noreturn]] void fail() const { throw std::invalid_argument("cannot parse number literal: " + s_); }
    bool peek(char ch) const { return pos_ < s_.size() && s_[pos_] == ch; }
    bool starts(std::string_view w) const { return s_.compare(pos_, w.size(), w) == 0; }

    Value expr() {
        Value v = term();
        while (peek('+') || peek('-')) {
            const bool minus = s_[pos_++] == '-';
            Value t = term();
            v = add(v, minus ? neg(t) : t);
        }
        return v;
    }

    Value term() {
        Value v = unary();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                v = mul(v, unary());
            } else if (peek('/')) {
                ++pos_;
                v = div(v, unary());
            } else if (peek('(') || peek('i') || starts("sqrt")) {
                v = mul(v, unary());  // implicit product: 2sqrt3, 0.4i
            } else {
                return v;
            }
        }
    }

    Value unary() {
        if (peek('-')) {
            ++pos_;
            return neg(unary());
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return primary();
    }

    Value primary() {
        if (peek('(')) {
            ++pos_;
            Value v = expr();
            if (!peek(')')) fail();
            ++pos_;
            return v;
        }
        if (peek('i')) {
            ++pos_;
            return radical(-1);
        }
        if (starts("sqrt")) {
            pos_ += 4;
            bool paren = false;
            if (peek('(')) {
                paren = true;
                ++pos_;
            }
            bool negative = false;
            if (peek('-')) {
                negative = true;
                ++pos_;
            }
            const std::size_t begin = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (begin == pos_) fail();
            const std::int64_t k = std::stoll(s_.substr(begin, pos_ - begin));
            if (paren) {
                if (!peek(')')) fail();
                ++pos_;
            }
            if (k == 0) return Value{};
            return radical(negative ? -k : k);
        }
        return number();
    }

    Value number() {
        const std::size_t begin = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (begin == pos_) fail();
        const std::string tok = s_.substr(begin, pos_ - begin);
        Value v;
        const auto dot = tok.find('.');
        if (dot == std::string::npos) {
            v.r = BigRational(BigInt(tok));
        } else {
            std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
            if (digits.empty() || digits.find('.') != std::string::npos) fail();
            BigInt den = 1;
            for (std::size_t i = dot + 1; i < tok.size(); ++i) den *= 10;
            v.r = BigRational(BigInt(digits), den);
            v.exact = false;
        }
        v.approx = {std::strtold(tok.c_str(), nullptr), 0.0L};
        return v;
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

Literal parse_literal(std::string_view text) {
    const std::string s = strip_spaces(text);
    if (s.empty()) throw std::invalid_argument("empty number literal");
    const Value v = LiteralParser(s).parse();
    Literal out;
    out.exact = v.exact;
    out.re = v.r;
    out.radical_coeff = v.s;
    out.radicand = v.s == 0 ? 0 : v.rad;
    out.approx = v.approx;
    return out;
}

std::optional<QuadSurd> Literal::as_surd() const {
    if (!is_real()) return std::nullopt;
    const BigInt p1 = boost::multiprecision::numerator(re);
    const BigInt q1 = boost::multiprecision::denominator(re);
    const BigInt p2 = boost::multiprecision::numerator(radical_coeff);
    const BigInt q2 = boost::multiprecision::denominator(radical_coeff);
    return QuadSurd(p1 * q2, p2 * q1, radicand, q1 * q2);
}

std::optional<KNumber> Literal::as_knumber() const {
    if (radical_coeff == 0) return KNumber(1, re, 0);
    if (radicand > 0) return std::nullopt;
    return KNumber(-radicand, re, radical_coeff);
}

}  // namespace lagspec
