#include "lagspec/heis.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

#include "lagspec/hypgeo.hpp"

namespace lagspec {

namespace {

using cld = std::complex<long double>;

cld ld(const QuadInt& x) {
    const OrderSpec& o = x.order();
    const cld w(static_cast<long double>(o.u()) / 2.0L, static_cast<long double>(o.v()) * std::sqrt(static_cast<long double>(o.m())) / 2.0L);
    return static_cast<long double>(x.a()) + static_cast<long double>(x.b()) * w;
}

std::string component(const BigRational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string component(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17Lg", v);
    return buf;
}

struct ParsedComponent {
    bool exact = true;
    BigRational q = 0;
    long double v = 0;
};

ParsedComponent parse_component(std::string_view s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    if (t.empty()) throw std::invalid_argument("empty Heisenberg coordinate");
    ParsedComponent out;
    if (t.find_first_of(".eE") != std::string::npos) {
        std::size_t used = 0;
        try {
            out.v = std::stold(t, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad Heisenberg coordinate '" + t + "'");
        }
        if (used != t.size()) throw std::invalid_argument("bad Heisenberg coordinate '" + t + "'");
        out.exact = false;
        return out;
    }
    const auto slash = t.find('/');
    auto parse_int = [&](const std::string& u) {
        if (u.empty() || u.find_first_not_of("+-0123456789") != std::string::npos || u.find_first_of("0123456789") == std::string::npos) {
            throw std::invalid_argument("bad Heisenberg coordinate '" + t + "'");
        }
        return BigInt(u[0] == '+' ? u.substr(1) : u);
    };
    if (slash == std::string::npos) {
        out.q = BigRational(parse_int(t));
    } else {
        const BigInt den = parse_int(t.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
        out.q = BigRational(parse_int(t.substr(0, slash)), den);
    }
    out.v = to_long_double(out.q);
    return out;
}

void require_same_field(const HeisPoint& x, const HeisPoint& y) {
    if (x.ez->k() != y.ez->k()) throw std::invalid_argument("Heisenberg points over different fields");
}

}  // namespace

HeisPoint::HeisPoint(std::complex<long double> z_, std::complex<long double> w_) : z(z_), w(w_) {
    const long double nw = std::norm(w);
    if (std::fabs(2.0L * z.real() - nw) > 1e-12L * (1.0L + nw)) throw DomainError("not a Heisenberg point: 2 Re z != |w|^2");
}

HeisPoint::HeisPoint(const KNumber& z_, const KNumber& w_) : z(z_.value_ld()), w(w_.value_ld()), ez(z_), ew(w_) {
    if (z_.k() != w_.k()) throw std::invalid_argument("coordinates from different fields");
    if (2 * z_.re() != w_.norm()) throw DomainError("not a Heisenberg point: 2 Re z != |w|^2");
}

std::string HeisPoint::to_string() const {
    if (is_exact() && ez->k() == 1) {
        return component(ez->re()) + "," + component(ez->im_coeff()) + ";" + component(ew->re()) + "," + component(ew->im_coeff());
    }
    return component(z.real()) + "," + component(z.imag()) + ";" + component(w.real()) + "," + component(w.imag());
}

HeisPoint HeisPoint::parse(std::string_view text, std::int64_t k) {
    const auto semi = text.find(';');
    if (semi == std::string_view::npos) throw std::invalid_argument("Heisenberg point must read z_re,z_im;w_re,w_im");
    std::vector<ParsedComponent> parts;
    for (std::string_view half : {text.substr(0, semi), text.substr(semi + 1)}) {
        const auto comma = half.find(',');
        if (comma == std::string_view::npos) throw std::invalid_argument("Heisenberg point must read z_re,z_im;w_re,w_im");
        parts.push_back(parse_component(half.substr(0, comma)));
        parts.push_back(parse_component(half.substr(comma + 1)));
    }
    bool exact = k == 1;
    for (const auto& p : parts) exact = exact && p.exact;
    if (exact) return HeisPoint(KNumber(1, parts[0].q, parts[1].q), KNumber(1, parts[2].q, parts[3].q));
    return HeisPoint(cld(parts[0].v, parts[1].v), cld(parts[2].v, parts[3].v));
}

HeisPoint heis_mul(const HeisPoint& x, const HeisPoint& y) {
    if (x.is_exact() && y.is_exact()) {
        require_same_field(x, y);
        return HeisPoint(*x.ez + *y.ez + *y.ew * x.ew->conj(), *x.ew + *y.ew);
    }
    return HeisPoint(x.z + y.z + y.w * std::conj(x.w), x.w + y.w);
}

HeisPoint heis_inverse(const HeisPoint& x) {
    if (x.is_exact()) return HeisPoint(x.ez->conj(), -*x.ew);
    return HeisPoint(std::conj(x.z), -x.w);
}

long double cygan_dist(const HeisPoint& x, const HeisPoint& y) {
    // x^-1 y without re-validating the float constraint
    const cld Z = std::conj(x.z) + y.z - y.w * std::conj(x.w);
    const cld W = y.w - x.w;
    return std::sqrt(2.0L * std::abs(Z) + std::norm(W));
}

HeisPoint HeisRational::point() const {
    if (c.is_zero()) throw DomainError("zero denominator");
    const KNumber kc = KNumber::from(c);
    return HeisPoint(KNumber::from(a) / kc, KNumber::from(alpha) / kc);
}

bool is_in_EprimeI(const OrderSpec& order, const IdealSpec& ideal, const QuadInt& a, const QuadInt& alpha, const QuadInt& c) {
    if (order.is_real() || !order.is_maximal()) throw DomainError("explicit E'_I form requires the maximal order of Q(sqrt(-m))");
    if (!(ideal.order() == order) || !(a.order() == order) || !(alpha.order() == order) || !(c.order() == order)) {
        throw std::invalid_argument("elements from different orders");
    }
    if (!ideal.contains(alpha) || !ideal.contains(c)) return false;
    if ((a * c.conj()).twice_re() != alpha.norm()) return false;
    if (a.is_zero() && alpha.is_zero() && c.is_zero()) return false;
    return IdealSpec(order, {a, alpha, c}).is_unit();
}

CPrimeEstimate c_prime_estimate(const OrderSpec& order, const IdealSpec& ideal, const HeisPoint& x, std::int64_t norm_bound,
                                std::int64_t min_norm) {
    if (order.is_real() || !order.is_maximal()) throw DomainError("explicit E'_I form requires the maximal order of Q(sqrt(-m))");
    if (norm_bound < 1) throw DomainError("norm bound must be at least 1");
    const CuspGroup g = CuspGroup::bianchi(order, ideal);
    CPrimeEstimate out;
    if (x.is_exact()) throw DomainError("parabolic point: x is a rational Heisenberg point");
    {
        const auto tz = cusp_test(BoundaryPoint::from_complex(x.z), g);
        const auto tw = cusp_test(BoundaryPoint::from_complex(x.w), g);
        out.heuristic_rational_check = tz.parabolic && tw.parabolic;
    }
    if (min_norm <= 0) min_norm = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(norm_bound)))));
    out.min_norm = min_norm;

    long double best = std::numeric_limits<long double>::infinity();
    std::string witness;
    bool any = false;
    std::int64_t shell = min_norm;
    auto flush_until = [&](std::int64_t n) {
        while (shell < n && shell < norm_bound) {
            if (any && std::isfinite(static_cast<double>(best))) out.trace.record(static_cast<double>(shell), static_cast<double>(best), witness, false);
            shell = std::min(shell * 2, norm_bound);
        }
    };
    auto search = [&](const QuadInt& c, long double radius) {
        bool found = false;
        const cld cv = ld(c);
        const long double ac = std::abs(cv);
        const cld cw = cv * x.w;
        const cld czb = cv * std::conj(x.z);
        const std::int64_t nc = c.norm();
        g.for_each_in_disc({static_cast<double>(cw.real()), static_cast<double>(cw.imag())}, static_cast<double>(radius), [&](const QuadInt& alpha) {
            if (!ideal.contains(alpha)) return;
            const long double e = std::norm(ld(alpha) - cw);
            const long double lim = std::min(radius, best);
            if (e > lim * lim) return;
            const long double ra = (lim * lim - e) / (2.0L * ac);
            const cld A0 = ld(alpha) * std::conj(x.w) - czb;
            const std::int64_t na = alpha.norm();
            g.for_each_in_disc({static_cast<double>(A0.real()), static_cast<double>(A0.imag())}, static_cast<double>(ra), [&](const QuadInt& a) {
                if ((a * c.conj()).twice_re() != na) return;
                const long double v = std::sqrt(2.0L * ac * std::abs(ld(a) - A0) + e);
                if (v >= best) return;
                if (nc != 1 && !IdealSpec(order, {a, alpha, c}).is_unit()) return;
                best = v;
                out.witness = HeisRational{a, alpha, c};
                witness = "(" + a.to_string() + "," + alpha.to_string() + "," + c.to_string() + ")";
                found = true;
            });
        });
        return found;
    };
    for (const auto& c : g.lower_left_entries(static_cast<double>(norm_bound))) {
        const std::int64_t nc = c.norm();
        if (nc < min_norm) continue;
        flush_until(nc);
        any = true;
        if (std::isfinite(static_cast<double>(best))) {
            search(c, best);
            continue;
        }
        for (long double r = 2.0L; r < 1e6L; r *= 2) {
            if (search(c, r)) break;
        }
    }
    if (!any || !std::isfinite(static_cast<double>(best))) throw DomainError("no admissible triples up to the norm bound");
    flush_until(norm_bound);
    out.trace.record(static_cast<double>(norm_bound), static_cast<double>(best), witness, false);
    out.value = out.trace.value();
    return out;
}

double heis_penetration(const QuadInt& c) {
    if (c.is_zero()) throw DomainError("c must be nonzero");
    const OrderSpec& o = c.order();
    if (o.is_real()) throw DomainError("Heisenberg penetration needs an imaginary quadratic order");
    return std::log(c.abs()) + std::log(2.0 * o.im_omega());
}

}  // namespace lagspec
