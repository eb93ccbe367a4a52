#include "lagspec/contfrac.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace lagspec {

// ------------------------------------------------------------------- CFWord

std::int64_t CFWord::term(std::size_t n) const {
    if (n < preperiod.size()) return preperiod[n];
    if (period.empty()) throw std::out_of_range("partial quotient beyond finite word");
    return period[(n - preperiod.size()) % period.size()];
}

std::vector<std::int64_t> CFWord::terms(std::size_t n) const {
    std::vector<std::int64_t> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(term(i));
    return out;
}

void CFWord::validate() const {
    if (preperiod.empty() && period.empty()) throw std::invalid_argument("empty continued fraction word");
    for (std::size_t i = 1; i < preperiod.size(); ++i) {
        if (preperiod[i] < 1) throw std::invalid_argument("partial quotients after the first must be >= 1");
    }
    for (auto b : period) {
        if (b < 1) throw std::invalid_argument("periodic partial quotients must be >= 1");
    }
    if (sampled_prefix && !period.empty()) throw std::invalid_argument("a periodic word cannot be a sampled prefix");
}

std::string CFWord::to_string() const {
    std::ostringstream os;
    os << "[";
    std::size_t items = 0;
    auto sep = [&]() {
        if (items == 1) os << "; ";
        else if (items > 1) os << ", ";
    };
    for (auto a : preperiod) {
        sep();
        os << a;
        ++items;
    }
    if (!period.empty()) {
        sep();
        os << "(";
        for (std::size_t i = 0; i < period.size(); ++i) os << (i ? ", " : "") << period[i];
        os << ")";
        ++items;
    }
    if (sampled_prefix) {
        sep();
        os << "...";
    }
    os << "]";
    return os.str();
}

namespace {

std::vector<std::int64_t> parse_int_list(const std::string& s, bool allow_semicolon_first) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = pos;
        while (end < s.size() && s[end] != ',' && s[end] != ';') ++end;
        const std::string tok = s.substr(pos, end - pos);
        if (tok.empty()) throw std::invalid_argument("empty entry in continued fraction word");
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad partial quotient '" + tok + "'");
        }
        if (used != tok.size()) throw std::invalid_argument("bad partial quotient '" + tok + "'");
        out.push_back(v);
        if (end < s.size() && s[end] == ';' && !(allow_semicolon_first && out.size() == 1)) {
            throw std::invalid_argument("';' may only follow the first partial quotient");
        }
        pos = end + 1;
        if (end == s.size()) break;
        if (pos == s.size()) throw std::invalid_argument("trailing separator in continued fraction word");
    }
    return out;
}

}  // namespace

CFWord CFWord::parse(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
        throw std::invalid_argument("continued fraction word must look like [a0; a1, (b1, b2)]");
    }
    s = s.substr(1, s.size() - 2);
    CFWord w;
    if (s.size() >= 3 && s.compare(s.size() - 3, 3, "...") == 0) {
        w.sampled_prefix = true;
        s.resize(s.size() - 3);
        if (!s.empty() && (s.back() == ',' || s.back() == ';')) s.pop_back();
    }
    const auto open = s.find('(');
    std::string head = s;
    if (open != std::string::npos) {
        const auto close = s.find(')', open);
        if (close == std::string::npos || close != s.size() - 1) {
            throw std::invalid_argument("the period must be the last item of the word");
        }
        w.period = parse_int_list(s.substr(open + 1, close - open - 1), false);
        if (w.period.empty()) throw std::invalid_argument("empty period");
        head = s.substr(0, open);
        if (!head.empty()) {
            if (head.back() != ',' && head.back() != ';') throw std::invalid_argument("missing separator before period");
            head.pop_back();
            if (head.empty()) throw std::invalid_argument("missing entry before period");
        }
    }
    if (!head.empty()) w.preperiod = parse_int_list(head, true);
    w.validate();
    return w;
}

// --------------------------------------------------------------- convergents

void ConvergentSeq::push(std::int64_t a) {
    const std::size_t n = p_.size();
    const BigInt p1 = n >= 1 ? p_[n - 1] : BigInt(1);
    const BigInt p2 = n >= 2 ? p_[n - 2] : BigInt(n == 1 ? 1 : 0);
    const BigInt q1 = n >= 1 ? q_[n - 1] : BigInt(0);
    const BigInt q2 = n >= 2 ? q_[n - 2] : BigInt(n == 1 ? 0 : 1);
    p_.push_back(a * p1 + p2);
    q_.push_back(a * q1 + q2);
}

ConvergentSeq convergents(const std::vector<std::int64_t>& terms) {
    ConvergentSeq seq;
    for (auto a : terms) seq.push(a);
    return seq;
}

BigRational value_of_finite(const std::vector<std::int64_t>& terms) {
    if (terms.empty()) throw std::invalid_argument("empty continued fraction word");
    const ConvergentSeq c = convergents(terms);
    return BigRational(c.p(c.size() - 1), c.q(c.size() - 1));
}

namespace {

QuadSurd purely_periodic_value(const std::vector<std::int64_t>& period) {
    const ConvergentSeq c = convergents(period);
    const std::size_t k = period.size();
    const BigInt pk = c.p(k - 1);
    const BigInt qk = c.q(k - 1);
    const BigInt pk1 = k >= 2 ? c.p(k - 2) : BigInt(1);
    const BigInt qk1 = k >= 2 ? c.q(k - 2) : BigInt(0);
    // qk y^2 + (qk1 - pk) y - pk1 = 0, positive root
    const BigInt lin = pk - qk1;
    const BigInt disc = lin * lin + 4 * qk * pk1;
    if (disc > BigInt(std::numeric_limits<std::int64_t>::max())) throw DomainError("period too long for exact evaluation");
    return QuadSurd(lin, 1, disc.convert_to<std::int64_t>(), 2 * qk);
}

}  // namespace

QuadSurd value_of(const CFWord& w) {
    w.validate();
    if (!w.is_periodic()) throw DomainError("value_of needs a periodic word");
    QuadSurd y = purely_periodic_value(w.period);
    const QuadSurd one = QuadSurd::rational(1);
    for (auto it = w.preperiod.rbegin(); it != w.preperiod.rend(); ++it) {
        y = QuadSurd::rational(*it) + one / y;
    }
    return y;
}

// ---------------------------------------------------------------- expansion

namespace {

BigInt floor_div_big(const BigInt& x, const BigInt& y) {
    BigInt q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return q;
}

}  // namespace

CFWord expand(const QuadSurd& x) {
    if (x.is_rational()) throw DomainError("rational input");
    // x = (P + sqrt(D)) / Q with Q | D - P^2
    const BigInt c2 = x.c() * x.c();
    BigInt D = x.b() * x.b() * x.d() * c2;
    BigInt P = x.a() * x.c();
    if (x.b() < 0) P = -P;
    BigInt Q = x.b() > 0 ? c2 : BigInt(-c2);
    const BigInt s = isqrt(D);

    std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
    std::vector<std::int64_t> terms;
    constexpr std::size_t kMaxTerms = 200000;
    while (terms.size() < kMaxTerms) {
        auto key = std::make_pair(P, Q);
        auto hit = seen.find(key);
        if (hit != seen.end()) {
            CFWord w;
            w.preperiod.assign(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(hit->second));
            w.period.assign(terms.begin() + static_cast<std::ptrdiff_t>(hit->second), terms.end());
            return w;
        }
        seen.emplace(std::move(key), terms.size());
        const BigInt a = Q > 0 ? floor_div_big(P + s, Q) : floor_div_big(P + s + 1, Q);
        if (terms.size() >= 1 && a < 1) throw std::logic_error("continued fraction state lost integrality");
        if (a > BigInt(std::numeric_limits<std::int64_t>::max()) || a < BigInt(std::numeric_limits<std::int64_t>::min())) {
            throw DomainError("partial quotient exceeds 64 bits");
        }
        terms.push_back(a.convert_to<std::int64_t>());
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    throw DomainError("period not found within the term budget");
}

std::vector<std::int64_t> expand_terms(const QuadSurd& x, std::size_t n) { return expand(x).terms(n); }

CFWord expand_decimal(std::string_view decimal, std::size_t n) {
    std::string s;
    for (char ch : decimal) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    const auto dot = s.find('.');
    std::string digits = dot == std::string::npos ? s : s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        throw std::invalid_argument("not a decimal number: " + std::string(decimal));
    }
    BigInt scale = 1;
    const std::size_t frac = dot == std::string::npos ? 0 : s.size() - dot - 1;
    for (std::size_t i = 0; i < frac; ++i) scale *= 10;
    BigInt num(digits);
    if (negative) num = -num;
    BigRational lo(2 * num - 1, 2 * scale);
    BigRational hi(2 * num + 1, 2 * scale);

    std::vector<std::int64_t> terms;
    while (terms.size() < n) {
        const BigInt flo = floor_div_big(boost::multiprecision::numerator(lo), boost::multiprecision::denominator(lo));
        const BigInt fhi = floor_div_big(boost::multiprecision::numerator(hi), boost::multiprecision::denominator(hi));
        if (flo != fhi || BigRational(flo) == lo) break;
        terms.push_back(flo.convert_to<std::int64_t>());
        const BigRational nlo = 1 / (hi - BigRational(flo));
        const BigRational nhi = 1 / (lo - BigRational(flo));
        lo = nlo;
        hi = nhi;
    }
    if (terms.size() < n) {
        throw DomainError("precision exhausted: largest safe n is " + std::to_string(terms.size()));
    }
    CFWord w;
    w.preperiod = std::move(terms);
    w.sampled_prefix = true;
    return w;
}

// -------------------------------------------------------- approx constants

QuadSurd periodic_constant(const std::vector<std::int64_t>& period) {
    if (period.empty()) throw std::invalid_argument("empty period");
    const std::size_t k = period.size();
    const QuadSurd one = QuadSurd::rational(1);
    std::optional<QuadSurd> best;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<std::int64_t> fwd(k), bwd(k);
        for (std::size_t i = 0; i < k; ++i) {
            fwd[i] = period[(j + i) % k];
            bwd[i] = period[(j + 2 * k - 1 - i) % k];
        }
        const QuadSurd lambda = purely_periodic_value(fwd) + one / purely_periodic_value(bwd);
        if (!best || lambda > *best) best = lambda;
    }
    return one / *best;
}

ConstantEstimate approx_constant(const CFWord& w) {
    w.validate();
    if (w.is_rational()) throw DomainError("rational input");
    ConstantEstimate out;
    if (w.is_periodic()) {
        const QuadSurd c = periodic_constant(w.period);
        out.exact = true;
        out.exact_value = c;
        out.value = c.to_double();
        out.trace.record(static_cast<double>(w.period.size()), out.value, w.to_string(), true);
        return out;
    }
    const auto& a = w.preperiod;
    const std::size_t N = a.size();
    const std::size_t begin = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(N))));
    if (N < 3 || begin + 2 > N) throw DomainError("sampled prefix too short for a windowed estimate");
    // tail[j] = [a_j; a_{j+1}, ..., a_{N-1}]
    std::vector<long double> tail(N);
    tail[N - 1] = static_cast<long double>(a[N - 1]);
    for (std::size_t j = N - 1; j-- > 0;) tail[j] = static_cast<long double>(a[j]) + 1.0L / tail[j + 1];
    // ratio r_n = q_{n-1} / q_n
    long double r = 0.0L;
    for (std::size_t n = 1; n + 1 < N; ++n) {
        r = 1.0L / (static_cast<long double>(a[n]) + r);
        if (n < begin) continue;
        const long double lambda = tail[n + 1] + r;
        out.trace.record(static_cast<double>(n), static_cast<double>(1.0L / lambda), "n=" + std::to_string(n), false);
    }
    out.value = out.trace.value();
    out.window_begin = begin;
    out.window_end = N - 2;
    return out;
}

BruteForceResult brute_force_constant(const QuadSurd& x, std::int64_t q_max, std::int64_t q_min) {
    if (q_max < 1) throw std::invalid_argument("Qmax must be >= 1");
    if (q_min <= 0) q_min = std::max<std::int64_t>(1, isqrt(q_max));
    if (q_min > q_max) throw std::invalid_argument("empty denominator window");
    const long double xv = x.to_long_double();
    const BigInt small = BigInt(1) << 20;
    const bool fast = boost::multiprecision::abs(x.a()) < small && boost::multiprecision::abs(x.b()) < small &&
                      x.c() < small && x.d() < (1 << 20) && q_max < (std::int64_t{1} << 24);
    const __int128 A0 = fast ? x.a().convert_to<std::int64_t>() : 0;
    const __int128 B0 = fast ? x.b().convert_to<std::int64_t>() : 0;
    const __int128 C0 = fast ? x.c().convert_to<std::int64_t>() : 1;
    const __int128 D0 = x.d();
    const long double root = std::sqrt(static_cast<long double>(x.d()));

    // |q x - p|
    auto distance = [&](std::int64_t q, std::int64_t p) -> long double {
        if (!fast) return std::fabs(x.linear(q, -p));
        const __int128 A = q * A0 - p * C0;
        const __int128 B = q * B0;
        long double v;
        if (B == 0 || D0 == 0 || (A >= 0) == (B >= 0)) {
            v = (static_cast<long double>(A) + static_cast<long double>(B) * root);
        } else {
            const __int128 num = A * A - B * B * D0;
            v = static_cast<long double>(num) / (static_cast<long double>(A) - static_cast<long double>(B) * root);
        }
        return std::fabs(v / static_cast<long double>(C0));
    };

    BruteForceResult best{std::numeric_limits<double>::infinity(), 0, 0};
    long double best_v = std::numeric_limits<long double>::infinity();
    for (std::int64_t q = q_min; q <= q_max; ++q) {
        const auto p0 = static_cast<std::int64_t>(std::llround(static_cast<long double>(q) * xv));
        for (std::int64_t p = p0 - 1; p <= p0 + 1; ++p) {
            const long double v = static_cast<long double>(q) * distance(q, p);
            if (v < best_v) {
                best_v = v;
                best.q = q;
                best.p = p;
            }
        }
    }
    best.value = static_cast<double>(best_v);
    return best;
}

// ------------------------------------------------------------------ Markov

std::vector<MarkovTriple> markov_triples(std::int64_t bound) {
    if (bound > 1'000'000'000) throw std::invalid_argument("Markov search bound too large");
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> seen;
    std::vector<std::array<std::int64_t, 3>> stack;
    if (bound >= 1) stack.push_back({1, 1, 1});
    while (!stack.empty()) {
        auto t = stack.back();
        stack.pop_back();
        std::sort(t.begin(), t.end());
        if (t[2] > bound || !seen.emplace(t[0], t[1], t[2]).second) continue;
        for (int i = 0; i < 3; ++i) {
            auto u = t;
            u[i] = 3 * t[(i + 1) % 3] * t[(i + 2) % 3] - t[i];
            if (u[i] >= 1 && u[i] <= bound) stack.push_back(u);
        }
    }
    std::vector<MarkovTriple> out;
    for (const auto& [a, b, c] : seen) out.push_back({a, b, c});
    std::sort(out.begin(), out.end(), [](const MarkovTriple& x, const MarkovTriple& y) {
        return std::tie(x.c, x.b, x.a) < std::tie(y.c, y.b, y.a);
    });
    return out;
}

bool is_markov_number(std::int64_t m) {
    if (m < 1) return false;
    for (const auto& t : markov_triples(m)) {
        if (t.c == m) return true;
    }
    return false;
}

QuadSurd markov_value_exact(std::int64_t m) {
    if (!is_markov_number(m)) throw DomainError("not a Markov number: " + std::to_string(m));
    const std::int64_t n = checked_sub(checked_mul(9, checked_mul(m, m)), 4);
    return QuadSurd(0, m, n, n);
}

double markov_value(std::int64_t m) { return markov_value_exact(m).to_double(); }

std::vector<std::int64_t> markov_period(std::int64_t m) {
    if (m == 1) return {1};
    if (m == 2) return {2};
    if (!is_markov_number(m)) throw DomainError("not a Markov number: " + std::to_string(m));
    struct Node {
        std::int64_t a, mid, b;
        std::vector<std::int64_t> A, M, B;
    };
    std::vector<Node> stack{{1, 5, 2, {1, 1}, {1, 1, 2, 2}, {2, 2}}};
    while (!stack.empty()) {
        Node n = std::move(stack.back());
        stack.pop_back();
        if (n.mid == m) return n.M;
        if (n.mid > m) continue;
        std::vector<std::int64_t> am = n.A;
        am.insert(am.end(), n.M.begin(), n.M.end());
        std::vector<std::int64_t> mb = n.M;
        mb.insert(mb.end(), n.B.begin(), n.B.end());
        stack.push_back({n.a, 3 * n.a * n.mid - n.b, n.mid, n.A, am, n.M});
        stack.push_back({n.mid, 3 * n.mid * n.b - n.a, n.b, n.M, mb, n.B});
    }
    throw DomainError("Markov number not reached in the tree: " + std::to_string(m));
}

}  // namespace lagspec
