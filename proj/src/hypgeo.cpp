#include "lagspec/hypgeo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>

namespace lagspec {

namespace {

using cld = std::complex<long double>;

cld omega_ld(const OrderSpec& o) {
    if (o.is_real()) return {0.0L, 0.0L};
    return {static_cast<long double>(o.u()) / 2.0L,
            static_cast<long double>(o.v()) * std::sqrt(static_cast<long double>(o.m())) / 2.0L};
}

cld value_ld(const QuadInt& x) {
    return static_cast<long double>(x.a()) + static_cast<long double>(x.b()) * omega_ld(x.order());
}

std::string fmt(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", static_cast<double>(v));
    return buf;
}

std::string row_string(const QuadInt& c, const QuadInt& d) { return "(" + c.to_string() + "," + d.to_string() + ")"; }

}  // namespace

// --------------------------------------------------------------- basics

double busemann_height(const ModelPoint& p) {
    if (!(p.h > 0)) throw std::invalid_argument("model point height must be positive");
    return std::log(p.h);
}

double hyperbolic_distance(const ModelPoint& p, const ModelPoint& q) {
    if (!(p.h > 0) || !(q.h > 0)) throw std::invalid_argument("model point height must be positive");
    const double num = std::sqrt(std::norm(p.z - q.z) + (p.h - q.h) * (p.h - q.h));
    return 2.0 * std::asinh(num / (2.0 * std::sqrt(p.h * q.h)));
}

Mobius::Mobius(std::complex<double> a_, std::complex<double> b_, std::complex<double> c_, std::complex<double> d_)
    : a(a_), b(b_), c(c_), d(d_) {
    const double scale = std::max(1.0, std::abs(a) * std::abs(d) + std::abs(b) * std::abs(c));
    if (std::abs(a * d - b * c - 1.0) > 1e-12 * scale) throw DomainError("Moebius map must have determinant 1");
}

ModelPoint Mobius::apply(const ModelPoint& p) const {
    const std::complex<double> den = c * p.z + d;
    const double D = std::norm(den) + std::norm(c) * p.h * p.h;
    const std::complex<double> z = ((a * p.z + b) * std::conj(den) + a * std::conj(c) * p.h * p.h) / D;
    return {z, p.h / D};
}

std::complex<double> Mobius::apply_boundary(std::complex<double> z) const {
    const std::complex<double> den = c * z + d;
    if (den == 0.0) throw DomainError("point is sent to infinity");
    return (a * z + b) / den;
}

Mobius Mobius::operator*(const Mobius& o) const {
    return Mobius(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
}

// ------------------------------------------------------------------- SL2

SL2::SL2(QuadInt a, QuadInt b, QuadInt c, QuadInt d) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    const OrderSpec& o = a_.order();
    if (!(b_.order() == o) || !(c_.order() == o) || !(d_.order() == o)) throw std::invalid_argument("entries from different orders");
    if (!(a_ * d_ - b_ * c_ == QuadInt(o, 1))) throw DomainError("not in group: determinant is not 1");
}

SL2 SL2::identity(const OrderSpec& order) {
    return SL2(QuadInt(order, 1), QuadInt(order, 0), QuadInt(order, 0), QuadInt(order, 1));
}

SL2 SL2::inverse() const { return SL2(d_, -b_, -c_, a_); }

SL2 SL2::operator*(const SL2& o) const {
    return SL2(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

Mobius SL2::to_mobius() const {
    return Mobius(a_.value(), b_.value(), c_.value(), d_.value());
}

std::string SL2::to_string() const {
    return "[[" + a_.to_string() + "," + b_.to_string() + "],[" + c_.to_string() + "," + d_.to_string() + "]]";
}

SL2::Kind SL2::classify() const {
    const QuadInt t = trace();
    const QuadInt t2 = t * t;
    if (t2.b() != 0) return Kind::Loxodromic;
    const std::int64_t v = t2.a();
    if (v > 4 || v < 0) return Kind::Loxodromic;
    if (v == 4) {
        if (b_.is_zero() && c_.is_zero() && a_ == d_) return Kind::Identity;
        return Kind::Parabolic;
    }
    return Kind::Elliptic;
}

std::string to_string(SL2::Kind k) {
    switch (k) {
        case SL2::Kind::Identity: return "identity";
        case SL2::Kind::Parabolic: return "parabolic";
        case SL2::Kind::Elliptic: return "elliptic";
        case SL2::Kind::Loxodromic: return "loxodromic";
    }
    return "unknown";
}

// ------------------------------------------------------------- CuspGroup

CuspGroup::CuspGroup(bool trivial, OrderSpec order, IdealSpec ideal)
    : trivial_(trivial), order_(std::move(order)), ideal_(std::move(ideal)), units_(lagspec::units(order_)) {
    if (!(ideal_.order() == order_)) throw std::invalid_argument("ideal belongs to a different order");
}

CuspGroup CuspGroup::trivial() {
    const auto z = OrderSpec::integers();
    return CuspGroup(true, z, IdealSpec::unit(z));
}

CuspGroup CuspGroup::modular() {
    const auto z = OrderSpec::integers();
    return CuspGroup(false, z, IdealSpec::unit(z));
}

CuspGroup CuspGroup::bianchi(const OrderSpec& order, const IdealSpec& ideal) { return CuspGroup(false, order, ideal); }

bool CuspGroup::contains(const SL2& g) const {
    if (trivial_) return g.classify() == SL2::Kind::Identity;
    return g.order() == order_ && ideal_.contains(g.c());
}

bool CuspGroup::is_row(const QuadInt& c, const QuadInt& d) const {
    if (trivial_) return c.is_zero() && d.norm() == 1;
    if (!ideal_.contains(c)) return false;
    if (c.is_zero()) return d.norm() == 1;
    if (d.is_zero()) return c.norm() == 1;
    if (order_.is_real()) return std::gcd(c.a(), d.a()) == 1;
    return IdealSpec(order_, {c, d}).is_unit();
}

double CuspGroup::covering_radius() const {
    if (order_.is_real()) return 0.5;
    const auto w = order_.omega();
    const double area = w.imag() / 2.0;
    return std::abs(w) * std::abs(w - 1.0) / (4.0 * area);
}

std::string CuspGroup::to_string() const {
    if (trivial_) return "trivial";
    if (order_.is_real()) return ideal_.is_unit() ? "PSL2(Z)" : "Gamma0(" + std::to_string(ideal_.hnf_n1()) + ")";
    return "Gamma0(" + ideal_.to_string() + ") in SL2(" + order_.to_string() + ")";
}

std::vector<QuadInt> CuspGroup::lower_left_entries(double norm_bound) const {
    std::vector<QuadInt> out;
    if (trivial_ || norm_bound < 1) return out;
    const double r = std::sqrt(norm_bound);
    const std::int64_t n1 = ideal_.hnf_n1();
    if (order_.is_real()) {
        const auto xmax = static_cast<std::int64_t>(std::floor(r / static_cast<double>(n1)));
        for (std::int64_t x = 1; x <= xmax; ++x) out.emplace_back(order_, x * n1);
        return out;
    }
    const std::int64_t t = ideal_.hnf_t();
    const std::int64_t n2 = ideal_.hnf_n2();
    const auto w = order_.omega();
    const auto ymax = static_cast<std::int64_t>(std::floor(r / (static_cast<double>(n2) * w.imag()))) + 1;
    for (std::int64_t y = 0; y <= ymax; ++y) {
        const double im = static_cast<double>(y * n2) * w.imag();
        if (im > r * (1 + 1e-12)) break;
        const double span = std::sqrt(std::max(0.0, r * r - im * im));
        const double re0 = static_cast<double>(y) * (static_cast<double>(t) + static_cast<double>(n2) * w.real());
        const auto xlo = static_cast<std::int64_t>(std::floor((-re0 - span) / static_cast<double>(n1))) - 1;
        const auto xhi = static_cast<std::int64_t>(std::ceil((-re0 + span) / static_cast<double>(n1))) + 1;
        for (std::int64_t x = xlo; x <= xhi; ++x) {
            if (y == 0 && x <= 0) continue;
            const QuadInt c(order_, checked_add(checked_mul(x, n1), checked_mul(y, t)), checked_mul(y, n2));
            if (static_cast<double>(c.norm()) <= norm_bound) out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadInt& p, const QuadInt& q) {
        const auto np = p.norm(), nq = q.norm();
        return np != nq ? np < nq : p < q;
    });
    return out;
}

void CuspGroup::for_each_in_disc(std::complex<double> center, double radius, const std::function<void(const QuadInt&)>& fn) const {
    if (radius < 0) return;
    const double slack = radius * (1 + 1e-12) + 1e-12;
    if (order_.is_real()) {
        const auto lo = static_cast<std::int64_t>(std::ceil(center.real() - slack));
        const auto hi = static_cast<std::int64_t>(std::floor(center.real() + slack));
        for (std::int64_t x = lo; x <= hi; ++x) {
            if (std::abs(static_cast<double>(x) - center.real()) <= slack) fn(QuadInt(order_, x));
        }
        return;
    }
    const auto w = order_.omega();
    const auto ylo = static_cast<std::int64_t>(std::ceil((center.imag() - slack) / w.imag()));
    const auto yhi = static_cast<std::int64_t>(std::floor((center.imag() + slack) / w.imag()));
    for (std::int64_t y = ylo; y <= yhi; ++y) {
        const double dy = static_cast<double>(y) * w.imag() - center.imag();
        const double span = std::sqrt(std::max(0.0, slack * slack - dy * dy));
        const double cx = center.real() - static_cast<double>(y) * w.real();
        const auto xlo = static_cast<std::int64_t>(std::ceil(cx - span));
        const auto xhi = static_cast<std::int64_t>(std::floor(cx + span));
        for (std::int64_t x = xlo; x <= xhi; ++x) {
            const QuadInt d(order_, x, y);
            if (std::abs(d.value() - center) <= slack) fn(d);
        }
    }
}

// -------------------------------------------------------- quotient height

HeightResult quotient_height(const ModelPoint& p, const CuspGroup& g, double cutoff) {
    const double base = busemann_height(p);
    HeightResult best;
    best.height = base;
    best.c = QuadInt(g.order(), 0);
    best.d = QuadInt(g.order(), 1);
    if (g.is_trivial()) {
        best.certified = true;
        return best;
    }
    if (g.is_real() && p.z.imag() != 0.0) throw std::invalid_argument("the modular group acts on H^2: horizontal coordinate must be real");
    const double h = p.h;
    auto needed = [&]() { return std::exp(-best.height) / h; };
    const auto entries = g.lower_left_entries(std::min(cutoff, needed()));
    for (const auto& c : entries) {
        const double nc = static_cast<double>(c.norm());
        if (nc >= needed()) break;
        const double r2 = h * std::exp(-best.height) - nc * h * h;
        if (r2 <= 0) continue;
        const std::complex<double> cz = c.value() * p.z;
        g.for_each_in_disc(-cz, std::sqrt(r2), [&](const QuadInt& d) {
            const double den = std::norm(cz + d.value()) + nc * h * h;
            const double val = std::log(h / den);
            if (val > best.height + 1e-15 && g.is_row(c, d)) {
                best.height = val;
                best.c = c;
                best.d = d;
            }
        });
    }
    best.needed_cutoff = needed();
    best.certified = cutoff >= best.needed_cutoff;
    return best;
}

// ------------------------------------------------------------ LinearForm

LinearForm::LinearForm(const QuadSurd& x) : exact_(true), surd_(x), approx_(x.to_long_double()) {
    const BigInt lim = BigInt(1) << 20;
    fast_ = boost::multiprecision::abs(x.a()) < lim && boost::multiprecision::abs(x.b()) < lim && x.c() < lim &&
            x.d() < (1 << 20);
    if (fast_) {
        a_ = x.a().convert_to<std::int64_t>();
        b_ = x.b().convert_to<std::int64_t>();
        c_ = x.c().convert_to<std::int64_t>();
        d_ = x.d();
        root_ = std::sqrt(static_cast<long double>(x.d()));
    }
}

LinearForm::LinearForm(long double x) : exact_(false), approx_(x) {}

long double LinearForm::operator()(std::int64_t c, std::int64_t d) const {
    if (!exact_) return static_cast<long double>(c) * approx_ + static_cast<long double>(d);
    constexpr std::int64_t lim = std::int64_t{1} << 31;
    if (!fast_ || c >= lim || c <= -lim || d >= lim || d <= -lim) return surd_.linear(c, d);
    const __int128 A = c * a_ + d * c_;
    const __int128 B = c * b_;
    long double v;
    if (B == 0 || d_ == 0 || (A >= 0) == (B >= 0)) {
        v = static_cast<long double>(A) + static_cast<long double>(B) * root_;
    } else {
        const __int128 num = A * A - B * B * d_;
        v = static_cast<long double>(num) / (static_cast<long double>(A) - static_cast<long double>(B) * root_);
    }
    return v / static_cast<long double>(c_);
}

RowEvaluator make_evaluator(const BoundaryPoint& x) {
    if (x.is_real()) {
        std::shared_ptr<LinearForm> lf;
        if (x.is_exact()) {
            if (auto s = x.exact->as_surd()) lf = std::make_shared<LinearForm>(*s);
        }
        if (!lf) lf = std::make_shared<LinearForm>(x.z.real());
        return [lf](const QuadInt& c, const QuadInt& d) {
            const long double first = (*lf)(c.a(), d.a());
            if (c.b() == 0 && d.b() == 0) return cld(first, 0.0L);
            // (c_a x + d_a) + (c_b x + d_b) w
            return cld(first, 0.0L) + (*lf)(c.b(), d.b()) * omega_ld(c.order());
        };
    }
    const cld z = x.z;
    return [z](const QuadInt& c, const QuadInt& d) { return value_ld(c) * z + value_ld(d); };
}

// ------------------------------------------------------------ RowReducer

RowReducer::RowReducer(const CuspGroup& g, RowEvaluator eval) : group_(&g), eval_(std::move(eval)) {
    if (g.is_trivial()) return;
    const OrderSpec& o = g.order();
    const auto [c1, c2] = g.ideal().basis();
    const QuadInt zero(o, 0);
    auto add = [&](const QuadInt& c, const QuadInt& d) {
        Vec v{c, d, {}, {}};
        refresh(v);
        basis_.push_back(v);
    };
    add(c1, zero);
    if (!o.is_real()) add(c2, zero);
    add(zero, QuadInt(o, 1));
    if (!o.is_real()) add(zero, QuadInt(o, 0, 1));
}

void RowReducer::refresh(Vec& v) const {
    v.l = eval_(v.c, v.d);
    v.cv = value_ld(v.c);
}

long double RowReducer::ip(const Vec& u, const Vec& v) const {
    return (u.l * std::conj(v.l)).real() + h2_ * (u.cv * std::conj(v.cv)).real();
}

void RowReducer::lll() {
    const std::size_t n = basis_.size();
    if (n < 2) return;
    const long double delta = 0.99L;
    std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
    std::vector<long double> bstar(n, 0);
    auto gso = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                long double s = ip(basis_[i], basis_[j]);
                for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * bstar[k];
                mu[i][j] = s / bstar[j];
            }
            long double s = ip(basis_[i], basis_[i]);
            for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * bstar[k];
            bstar[i] = s;
        }
    };
    std::size_t k = 1;
    int guard = 0;
    gso();
    while (k < n) {
        if (++guard > 100000) throw std::runtime_error("lattice reduction did not terminate");
        for (std::size_t jj = k; jj-- > 0;) {
            const long double m = mu[k][jj];
            if (std::fabs(m) > 0.5L) {
                const auto r = static_cast<std::int64_t>(std::llroundl(m));
                const QuadInt rr(basis_[k].c.order(), r);
                basis_[k].c = basis_[k].c - rr * basis_[jj].c;
                basis_[k].d = basis_[k].d - rr * basis_[jj].d;
                refresh(basis_[k]);
                gso();
            }
        }
        if (bstar[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
            ++k;
        } else {
            std::swap(basis_[k], basis_[k - 1]);
            gso();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
}

HeightResult RowReducer::height(long double h) {
    if (!(h > 0)) throw std::invalid_argument("height must be positive");
    HeightResult out;
    const OrderSpec& o = group_->order();
    short_.clear();
    if (group_->is_trivial()) {
        out.height = static_cast<double>(std::log(h));
        out.c = QuadInt(o, 0);
        out.d = QuadInt(o, 1);
        out.certified = true;
        return out;
    }
    h2_ = h * h;
    lll();
    const std::size_t n = basis_.size();
    // Cholesky of the Gram matrix, G = R^T R
    std::vector<std::vector<long double>> G(n, std::vector<long double>(n)), R(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) G[i][j] = ip(basis_[i], basis_[j]);
    for (std::size_t i = 0; i < n; ++i) {
        long double s = G[i][i];
        for (std::size_t k = 0; k < i; ++k) s -= R[k][i] * R[k][i];
        if (!(s > 0)) throw std::runtime_error("degenerate row lattice");
        R[i][i] = std::sqrt(s);
        for (std::size_t j = i + 1; j < n; ++j) {
            long double t = G[i][j];
            for (std::size_t k = 0; k < i; ++k) t -= R[k][i] * R[k][j];
            R[i][j] = t / R[i][i];
        }
    }
    auto qform = [&](const Vec& v) { return std::norm(v.l) + h2_ * std::norm(v.cv); };

    long double radius = std::numeric_limits<long double>::infinity();
    for (const auto& b : basis_) {
        if (group_->is_row(b.c, b.d)) radius = std::min(radius, qform(b));
    }
    if (!std::isfinite(static_cast<double>(radius))) {
        radius = 0;
        for (const auto& b : basis_) radius += qform(b);
    }

    for (int attempt = 0; attempt < 30; ++attempt) {
        const long double bound = 4.0L * radius * (1.0L + 1e-12L);
        std::vector<Row> rows;
        std::array<std::int64_t, 4> x{0, 0, 0, 0};
        std::function<void(int, long double)> rec = [&](int i, long double rem) {
            long double center = 0;
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) center -= R[i][j] / R[i][i] * x[j];
            const long double span = std::sqrt(std::max(0.0L, rem)) / R[i][i];
            const auto lo = static_cast<std::int64_t>(std::ceil(center - span - 1e-9L));
            const auto hi = static_cast<std::int64_t>(std::floor(center + span + 1e-9L));
            for (std::int64_t xi = lo; xi <= hi; ++xi) {
                const long double tt = (static_cast<long double>(xi) - center) * R[i][i];
                const long double used = tt * tt;
                if (used > rem * (1.0L + 1e-9L) + 1e-300L) continue;
                x[i] = xi;
                if (i == 0) {
                    bool zero = true;
                    for (std::size_t j = 0; j < n; ++j) zero = zero && x[j] == 0;
                    if (zero) continue;
                    Vec v{QuadInt(o, 0), QuadInt(o, 0), {}, {}};
                    for (std::size_t j = 0; j < n; ++j) {
                        if (x[j] == 0) continue;
                        const QuadInt s(o, x[j]);
                        v.c = v.c + s * basis_[j].c;
                        v.d = v.d + s * basis_[j].d;
                    }
                    if (!group_->is_row(v.c, v.d)) continue;
                    refresh(v);
                    rows.push_back({v.c, v.d, qform(v)});
                } else {
                    rec(i - 1, rem - used);
                }
            }
            x[i] = 0;
        };
        rec(static_cast<int>(n) - 1, bound);
        if (rows.empty()) {
            radius *= 4;
            continue;
        }
        std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.q < b.q; });
        const long double best = rows.front().q;
        if (best > radius * (1.0L + 1e-9L)) {
            radius = best;
            continue;
        }
        for (const auto& r : rows) {
            if (r.q > 4.0L * best) break;
            // keep one of +-(c, d)
            const bool pos = r.c.a() > 0 || (r.c.a() == 0 && (r.c.b() > 0 || (r.c.b() == 0 && (r.d.a() > 0 || (r.d.a() == 0 && r.d.b() > 0)))));
            if (pos) short_.push_back(r);
        }
        const Row& top = rows.front();
        out.height = static_cast<double>(std::log(h / top.q));
        out.c = top.c;
        out.d = top.d;
        if (out.c.a() < 0 || (out.c.a() == 0 && out.c.b() < 0) || (out.c.is_zero() && out.d.a() < 0)) {
            out.c = -out.c;
            out.d = -out.d;
        }
        out.certified = true;
        out.needed_cutoff = static_cast<double>(1.0L / (top.q * h));
        return out;
    }
    throw std::runtime_error("no admissible row found");
}

// ----------------------------------------------------------- penetration

double horoball_penetration(const Mobius& g) {
    if (std::abs(g.c) == 0.0) throw DomainError("parabolic/upper-triangular: same horoball");
    if (std::abs(g.c) < 1.0 - 1e-12) throw DomainError("horoballs overlap: |q| < 1");
    const ModelPoint above{-g.d / g.c, 1.0};
    const ModelPoint top = g.apply(above);
    const ModelPoint boundary{top.z, 1.0};
    return hyperbolic_distance(top, boundary);
}

double horoball_penetration(const SL2& g) {
    if (g.c().is_zero()) throw DomainError("parabolic/upper-triangular: same horoball");
    return horoball_penetration(g.to_mobius());
}

double D_of_r(const QuadInt& q) {
    if (q.is_zero()) throw DomainError("q must be nonzero");
    return std::log(static_cast<double>(q.norm()));
}

double D_of_r(std::int64_t q) {
    if (q == 0) throw DomainError("q must be nonzero");
    return 2.0 * std::log(std::fabs(static_cast<double>(q)));
}

// ------------------------------------------------------ cuspidal distance

CuspidalResult cuspidal_distance(std::complex<double> u, std::complex<double> v, const CuspGroup& g) {
    CuspidalResult out;
    out.translation = QuadInt(g.order(), 0);
    out.unit_square = QuadInt(g.order(), 1);
    if (g.is_trivial()) {
        out.distance = std::abs(u - v);
        return out;
    }
    std::set<QuadInt> squares;
    for (const auto& e : g.units()) squares.insert(e * e);
    out.distance = std::numeric_limits<double>::infinity();
    for (const auto& s : squares) {
        const std::complex<double> w = u - s.value() * v;
        const QuadInt lam = nearest_element(g.order(), w);
        const double dist = std::abs(w - lam.value());
        if (dist < out.distance) {
            out.distance = dist;
            out.translation = lam;
            out.unit_square = s;
        }
    }
    return out;
}

// -------------------------------------------------------- boundary points

BoundaryPoint BoundaryPoint::from_literal(const Literal& lit) {
    BoundaryPoint p;
    p.z = lit.approx;
    p.exact = lit;
    return p;
}

BoundaryPoint BoundaryPoint::from_complex(std::complex<long double> z) {
    BoundaryPoint p;
    p.z = z;
    return p;
}

BoundaryPoint BoundaryPoint::from_surd(const QuadSurd& x) {
    Literal lit;
    lit.exact = true;
    lit.re = BigRational(x.a(), x.c());
    lit.radical_coeff = x.is_rational() ? BigRational(0) : BigRational(x.b(), x.c());
    lit.radicand = x.is_rational() ? 0 : x.d();
    lit.approx = {x.to_long_double(), 0.0L};
    return from_literal(lit);
}

BoundaryPoint BoundaryPoint::parse(std::string_view text) { return from_literal(parse_literal(text)); }

std::string BoundaryPoint::to_string() const {
    if (z.imag() == 0.0L) return fmt(z.real());
    std::string s = fmt(z.real());
    s += z.imag() < 0 ? "-" : "+";
    s += fmt(std::fabs(z.imag())) + "i";
    return s;
}

namespace {

bool looks_rational(long double v, std::int64_t qmax) {
    const long double tol = 1e-12L * std::max(1.0L, std::fabs(v));
    long double x = v;
    long double p0 = 1, q0 = 0, p1 = std::floor(x), q1 = 1;
    if (std::fabs(v - p1) <= tol) return true;
    x -= std::floor(x);
    for (int it = 0; it < 60 && x > 0; ++it) {
        x = 1.0L / x;
        const long double a = std::floor(x);
        x -= a;
        const long double p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > static_cast<long double>(qmax)) return false;
        if (std::fabs(v - p2 / q2) <= tol) return true;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return false;
}

}  // namespace

CuspTest cusp_test(const BoundaryPoint& x, const CuspGroup& g) {
    CuspTest out;
    if (g.is_trivial()) return out;
    if (g.is_real() && !x.is_real()) throw std::invalid_argument("boundary point of H^2 must be real");
    if (x.is_exact()) {
        const Literal& lit = *x.exact;
        if (lit.radical_coeff == 0) out.parabolic = true;
        else if (!g.is_real() && lit.radicand == -g.order().m()) out.parabolic = true;
        return out;
    }
    out.heuristic = true;
    constexpr std::int64_t kBound = 1'000'000;
    if (g.is_real()) {
        out.parabolic = looks_rational(x.z.real(), kBound);
        return out;
    }
    const cld w = omega_ld(g.order());
    const long double yb = x.z.imag() / w.imag();
    const long double xa = x.z.real() - yb * w.real();
    out.parabolic = looks_rational(xa, kBound) && looks_rational(yb, kBound);
    return out;
}

// ------------------------------------------------------ geodesic heights

namespace {

struct Endpoints {
    cld plus, minus;
    long double multiplier;
};

Endpoints fixed_points(const SL2& e) {
    const cld a = value_ld(e.a()), b = value_ld(e.b()), c = value_ld(e.c()), d = value_ld(e.d());
    const cld tr = a + d;
    cld s = std::sqrt(tr * tr - 4.0L);
    // c z^2 + (d - a) z - b = 0
    const cld P = a - d;
    if (std::abs(P + s) < std::abs(P - s)) s = -s;
    const cld z1 = (P + s) / (2.0L * c);
    const cld z2 = (-b / c) / z1;
    Endpoints out;
    const bool first_attracting = std::abs(c * z1 + d) > 1.0L;
    out.plus = first_attracting ? z1 : z2;
    out.minus = first_attracting ? z2 : z1;
    const cld mu = (tr + std::sqrt(tr * tr - 4.0L)) / 2.0L;
    out.multiplier = std::max(std::abs(mu), 1.0L / std::abs(mu));
    return out;
}

}  // namespace

GeodesicHeight geodesic_height(const SL2& e, const CuspGroup& g) {
    if (!g.contains(e)) throw DomainError("not in group: " + e.to_string());
    const auto kind = e.classify();
    if (kind != SL2::Kind::Loxodromic) throw DomainError("not a closed geodesic: element is " + to_string(kind));
    const QuadInt& c0 = e.c();
    if (c0.is_zero()) throw DomainError("not a closed geodesic: element fixes the cusp");
    const OrderSpec& o = g.order();
    const Endpoints ep = fixed_points(e);
    const QuadInt tr = e.trace();
    const QuadInt delta = tr * tr - QuadInt(o, 4);
    const QuadInt amd = e.a() - e.d();
    auto form = [&](const QuadInt& c, const QuadInt& d) { return c0 * d * d + amd * c * d - e.b() * c * c; };

    const double nc0 = static_cast<double>(c0.norm());
    GeodesicHeight out;
    out.c = QuadInt(o, 0);
    out.d = QuadInt(o, 1);
    std::int64_t best = c0.norm();  // N(F) at the row (0, 1)
    auto bound_g = [&]() { return std::sqrt(static_cast<double>(best) / nc0); };  // current min |G|
    const double gap = static_cast<double>(std::abs(ep.plus - ep.minus));
    const double lambda = static_cast<double>(ep.multiplier);
    auto cmax2 = [&]() {
        const double r = (lambda + 1.0) * std::sqrt(bound_g()) / gap;
        return r * r * (1 + 1e-9);
    };
    const std::complex<double> xp(static_cast<double>(ep.plus.real()), static_cast<double>(ep.plus.imag()));
    for (const auto& c : g.lower_left_entries(cmax2())) {
        if (static_cast<double>(c.norm()) > cmax2()) break;
        const double radius = std::sqrt(bound_g()) * (1 + 1e-9) + 1e-12;
        g.for_each_in_disc(-c.value() * xp, radius, [&](const QuadInt& d) {
            if (!g.is_row(c, d)) return;
            const std::int64_t nf = form(c, d).norm();
            if (nf < best) {
                best = nf;
                out.c = c;
                out.d = d;
            }
        });
    }
    out.height = 0.25 * std::log(static_cast<double>(delta.norm())) - 0.5 * std::log(static_cast<double>(best)) - std::log(2.0);
    out.certified = true;
    return out;
}

GeodesicHeight geodesic_height(const Axis& axis, const CuspGroup& g, double cutoff) {
    if (axis.element) return geodesic_height(*axis.element, g);
    const cld p = axis.plus.z, m = axis.minus.z;
    if (p == m) throw DomainError("endpoints coincide");
    if (!std::isfinite(static_cast<double>(std::abs(p))) || !std::isfinite(static_cast<double>(std::abs(m)))) {
        throw std::invalid_argument("endpoints must be finite");
    }
    if (cusp_test(axis.plus, g).parabolic || cusp_test(axis.minus, g).parabolic) {
        throw DomainError("not a closed geodesic: endpoint is a cusp");
    }
    const OrderSpec& o = g.order();
    const double base = static_cast<double>(std::log(std::abs(p - m) / 2.0L));
    GeodesicHeight out;
    out.c = QuadInt(o, 0);
    out.d = QuadInt(o, 1);
    out.height = base;
    if (g.is_trivial()) {
        out.certified = true;
        return out;
    }
    long double best = 1.0L;
    for (const auto& c : g.lower_left_entries(cutoff * cutoff)) {
        const cld cv = value_ld(c);
        for (const cld& xi : {p, m}) {
            const cld center = -cv * xi;
            const double radius = static_cast<double>(std::sqrt(best)) * (1 + 1e-9) + 1e-12;
            g.for_each_in_disc({static_cast<double>(center.real()), static_cast<double>(center.imag())}, radius, [&](const QuadInt& d) {
                if (!g.is_row(c, d)) return;
                const cld dv = value_ld(d);
                const long double val = std::abs((cv * p + dv) * (cv * m + dv));
                if (val < best) {
                    best = val;
                    out.c = c;
                    out.d = d;
                }
            });
        }
    }
    out.height = base - static_cast<double>(std::log(best));
    out.certified = false;
    return out;
}

// ------------------------------------------------------------ excursions

ExcursionResult excursion_limsup(const BoundaryPoint& x, const CuspGroup& g, const ExcursionOptions& opt) {
    if (opt.depth < 1) throw DomainError("insufficient depth");
    if (!(opt.t0 > 0) || !(opt.ratio > 1) || !(opt.window_fraction > 0 && opt.window_fraction <= 1) || !(opt.max_substep > 0)) {
        throw std::invalid_argument("invalid excursion options");
    }
    const CuspTest ct = cusp_test(x, g);
    if (ct.parabolic && !ct.heuristic) throw DomainError("parabolic point");
    ExcursionResult out;
    out.heuristic_cusp_check = ct.heuristic;
    out.exact_rows = x.is_exact();

    std::vector<double> grid(static_cast<std::size_t>(opt.depth));
    for (int k = 0; k < opt.depth; ++k) grid[static_cast<std::size_t>(k)] = opt.t0 * std::pow(opt.ratio, k);
    const auto n_window = static_cast<std::size_t>(std::ceil(opt.window_fraction * opt.depth));
    const std::size_t ws = grid.size() - std::max<std::size_t>(1, n_window);
    const double t_begin = grid[ws];
    const double t_end = grid.back();
    out.window_begin = t_begin;
    out.window_end = t_end;

    struct Event {
        double t;
        double value;
        std::string witness;
    };
    std::vector<Event> events;
    std::set<std::pair<QuadInt, QuadInt>> seen;
    RowEvaluator eval = make_evaluator(x);
    RowReducer reducer(g, eval);

    auto sample = [&](double t) {
        const long double h = std::exp(-static_cast<long double>(t));
        const HeightResult r = reducer.height(h);
        events.push_back({t, r.height, "t=" + fmt(t) + " row=" + row_string(r.c, r.d)});
        for (const Row& row : reducer.short_rows()) {
            if (row.c.is_zero()) continue;
            if (!seen.insert({row.c, row.d}).second) continue;
            const long double cl = std::abs(value_ld(row.c));
            const long double ll = std::abs(eval(row.c, row.d));
            if (ll == 0) continue;
            const double tpk = static_cast<double>(std::log(cl / ll));
            if (tpk < t_begin || tpk > t_end) continue;
            events.push_back({tpk, static_cast<double>(-std::log(2.0L * cl * ll)), "peak row=" + row_string(row.c, row.d)});
        }
    };

    sample(grid[ws]);
    for (std::size_t k = ws + 1; k < grid.size(); ++k) {
        const double span = grid[k] - grid[k - 1];
        const int sub = std::max(1, static_cast<int>(std::ceil(span / opt.max_substep)));
        for (int s = 1; s <= sub; ++s) sample(grid[k - 1] + span * s / sub);
    }
    std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.t < b.t; });

    std::size_t e = 0;
    double running = -std::numeric_limits<double>::infinity();
    std::string witness;
    for (std::size_t k = ws; k < grid.size(); ++k) {
        while (e < events.size() && events[e].t <= grid[k] + 1e-12) {
            if (events[e].value > running) {
                running = events[e].value;
                witness = events[e].witness;
            }
            ++e;
        }
        out.trace.record(grid[k], running, witness, out.exact_rows);
    }
    out.estimate = out.trace.value();
    out.witness = out.trace.last().witness;
    return out;
}

}  // namespace lagspec
