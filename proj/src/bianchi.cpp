#include "lagspec/bianchi.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace lagspec {

namespace {

using cld = std::complex<long double>;

cld omega_of(const OrderSpec& o) {
    if (o.is_real()) return {0.0L, 0.0L};
    return {static_cast<long double>(o.u()) / 2.0L, static_cast<long double>(o.v()) * std::sqrt(static_cast<long double>(o.m())) / 2.0L};
}

cld ld(const QuadInt& x) { return static_cast<long double>(x.a()) + static_cast<long double>(x.b()) * omega_of(x.order()); }

bool coprime(const OrderSpec& o, const QuadInt& p, const QuadInt& q) {
    if (p.is_zero() && q.is_zero()) return false;
    if (o.is_real()) return std::gcd(p.a(), q.a()) == 1;
    if (p.norm() == 1 || q.norm() == 1) return true;
    return IdealSpec(o, {p, q}).is_unit();
}

std::string frac_string(const FractionPoint& f) { return "(" + f.p.to_string() + ")/(" + f.q.to_string() + ")"; }

}  // namespace

// -------------------------------------------------------------- context

BianchiContext::BianchiContext(const OrderSpec& order, const IdealSpec& ideal) : group_(CuspGroup::bianchi(order, ideal)) {}

BianchiContext BianchiContext::modular() { return BianchiContext(CuspGroup::modular()); }

BianchiContext BianchiContext::trivial() { return BianchiContext(CuspGroup::trivial()); }

std::string BianchiContext::to_string() const { return group_.to_string(); }

std::complex<double> FractionPoint::value() const {
    if (q.is_zero()) throw DomainError("zero denominator");
    return p.value() / q.value();
}

bool is_in_EI(const BianchiContext& ctx, const QuadInt& p, const QuadInt& q) {
    if (!(p.order() == ctx.order()) || !(q.order() == ctx.order())) throw std::invalid_argument("element from a different order");
    if (q.is_zero() || !ctx.ideal().contains(q)) return false;
    return coprime(ctx.order(), p, q);
}

std::vector<FractionPoint> enumerate_EI(const BianchiContext& ctx, std::int64_t norm_bound) {
    std::vector<FractionPoint> out;
    if (ctx.is_trivial() || norm_bound < 1) return out;
    const OrderSpec& o = ctx.order();
    std::vector<QuadInt> qs;
    for (const auto& c : ctx.group().lower_left_entries(static_cast<double>(norm_bound))) {
        qs.push_back(c);
        qs.push_back(-c);
    }
    std::sort(qs.begin(), qs.end(), [](const QuadInt& x, const QuadInt& y) {
        const auto nx = x.norm(), ny = y.norm();
        return nx != ny ? nx < ny : x < y;
    });
    for (const auto& q : qs) {
        const std::int64_t nq = q.norm();
        std::vector<QuadInt> ps;
        if (o.is_real()) {
            const std::int64_t n = std::abs(q.a());
            for (std::int64_t r = 0; r < n; ++r) {
                // p/q in [0, 1)
                const QuadInt p(o, q.a() > 0 ? r : -r);
                if (coprime(o, p, q)) ps.push_back(p);
            }
        } else {
            // residues of O / qO from the HNF of (q), then moved into the cell
            const IdealSpec qo(o, {q});
            const QuadInt qc = q.conj();
            for (std::int64_t y = 0; y < qo.hnf_n2(); ++y) {
                for (std::int64_t x = 0; x < qo.hnf_n1(); ++x) {
                    QuadInt p(o, x, y);
                    if (!coprime(o, p, q)) continue;
                    const QuadInt num = p * qc;  // p/q = num / N(q)
                    const QuadInt shift(o, floor_div(num.a(), nq), floor_div(num.b(), nq));
                    p = p - shift * q;
                    ps.push_back(p);
                }
            }
            std::sort(ps.begin(), ps.end());
        }
        for (const auto& p : ps) out.push_back({p, q});
    }
    return out;
}

QuadInt best_numerator(const BianchiContext& ctx, std::complex<long double> x, const QuadInt& q) {
    if (q.is_zero()) throw DomainError("zero denominator");
    const OrderSpec& o = ctx.order();
    const cld center = ld(q) * x;
    double radius = ctx.group().covering_radius() * 1.000001;
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::optional<QuadInt> best;
        long double best_dist = std::numeric_limits<long double>::infinity();
        ctx.group().for_each_in_disc({static_cast<double>(center.real()), static_cast<double>(center.imag())}, radius, [&](const QuadInt& p) {
            const long double dist = std::abs(center - ld(p));
            if (dist < best_dist && coprime(o, p, q)) {
                best_dist = dist;
                best = p;
            }
        });
        if (best) return *best;
        radius *= 2;
    }
    throw std::runtime_error("no coprime numerator found");
}

FractionPoint nearest_translate(const BianchiContext& ctx, std::complex<long double> x, const FractionPoint& f) {
    std::set<QuadInt> squares;
    for (const auto& u : ctx.units()) squares.insert(u * u);
    FractionPoint best = f;
    long double best_dist = std::numeric_limits<long double>::infinity();
    const cld qv = ld(f.q);
    for (const auto& s : squares) {
        const QuadInt sp = s * f.p;
        const cld w = x - ld(sp) / qv;
        const QuadInt lam = nearest_element(ctx.order(), {static_cast<double>(w.real()), static_cast<double>(w.imag())});
        // the nearest lattice point of a rounded value may be off by one cell
        std::vector<QuadInt> steps{QuadInt(ctx.order(), 0), QuadInt(ctx.order(), 1), QuadInt(ctx.order(), -1)};
        if (!ctx.order().is_real()) {
            steps.emplace_back(ctx.order(), 0, 1);
            steps.emplace_back(ctx.order(), 0, -1);
        }
        for (const auto& du : steps) {
            const QuadInt l = lam + du;
            const QuadInt p = sp + l * f.q;
            const long double dist = std::abs(x - ld(p) / qv);
            if (dist < best_dist) {
                best_dist = dist;
                best = {p, f.q};
            }
        }
    }
    return best;
}

CIEstimate c_I_estimate(const BianchiContext& ctx, const BoundaryPoint& x, std::int64_t norm_bound, std::int64_t min_norm) {
    if (ctx.is_trivial()) throw DomainError("trivial group has no rational approximations");
    if (norm_bound < 1) throw DomainError("norm bound must be at least 1");
    const CuspTest ct = cusp_test(x, ctx.group());
    if (ct.parabolic && !ct.heuristic) throw DomainError("parabolic point: x lies in the field");
    CIEstimate out;
    out.heuristic_cusp_check = ct.heuristic;
    if (min_norm <= 0) min_norm = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(norm_bound)))));
    out.min_norm = min_norm;
    const auto entries = ctx.group().lower_left_entries(static_cast<double>(norm_bound));

    double running = std::numeric_limits<double>::infinity();
    std::string witness;
    bool any = false;
    std::int64_t shell = min_norm;
    auto flush_until = [&](std::int64_t n) {
        while (shell < n && shell < norm_bound) {
            if (any) out.trace.record(static_cast<double>(shell), running, witness, false);
            shell = std::min(shell * 2, norm_bound);
        }
    };
    for (const auto& q : entries) {
        const std::int64_t nq = q.norm();
        if (nq < min_norm) continue;
        flush_until(nq);
        const QuadInt p = best_numerator(ctx, x.z, q);
        const long double val = std::abs(ld(q)) * std::abs(ld(q) * x.z - ld(p));
        if (static_cast<double>(val) < running) {
            running = static_cast<double>(val);
            out.witness = {p, q};
            witness = frac_string(out.witness);
        }
        any = true;
    }
    if (!any) throw DomainError("no admissible denominators with norm in [" + std::to_string(min_norm) + ", " + std::to_string(norm_bound) + "]");
    flush_until(norm_bound);
    out.trace.record(static_cast<double>(norm_bound), running, witness, false);
    out.value = out.trace.value();
    return out;
}

// ------------------------------------------------------------------ axes

std::string LoxodromicAxis::to_string() const {
    return "((" + shift.to_string() + ") +- sqrt(" + discriminant.to_string() + "))/(" + denominator.to_string() + ")";
}

LoxodromicAxis loxodromic_axis(const SL2& g) {
    const auto kind = g.classify();
    if (kind != SL2::Kind::Loxodromic) throw DomainError(to_string(kind) + " element has no axis");
    if (g.c().is_zero()) throw DomainError("element fixes the cusp at infinity");
    const OrderSpec& o = g.order();
    LoxodromicAxis ax;
    ax.shift = g.a() - g.d();
    ax.discriminant = g.trace() * g.trace() - QuadInt(o, 4);
    ax.denominator = QuadInt(o, 2) * g.c();
    std::array<BoundaryPoint, 2> roots;
    if (o.is_real()) {
        const std::int64_t sgn = g.c().a() > 0 ? 1 : -1;
        for (int k = 0; k < 2; ++k) {
            const std::int64_t pm = k == 0 ? 1 : -1;
            roots[k] = BoundaryPoint::from_surd(QuadSurd(sgn * ax.shift.a(), sgn * pm, ax.discriminant.a(), sgn * ax.denominator.a()));
        }
    } else {
        const cld s = std::sqrt(ld(ax.discriminant));
        roots[0] = BoundaryPoint::from_complex((ld(ax.shift) + s) / ld(ax.denominator));
        roots[1] = BoundaryPoint::from_complex((ld(ax.shift) - s) / ld(ax.denominator));
    }
    const cld c = ld(g.c()), d = ld(g.d());
    const bool first = std::abs(c * roots[0].z + d) > 1.0L;
    ax.plus = first ? roots[0] : roots[1];
    ax.minus = first ? roots[1] : roots[0];
    return ax;
}

// -------------------------------------------------------------- sampler

std::vector<std::pair<char, SL2>> generators(const BianchiContext& ctx) {
    std::vector<std::pair<char, SL2>> out;
    if (ctx.is_trivial()) return out;
    const OrderSpec& o = ctx.order();
    const QuadInt one(o, 1), zero(o, 0);
    auto add = [&](char name, const SL2& g) {
        out.emplace_back(name, g);
        out.emplace_back(static_cast<char>(name - 'A' + 'a'), g.inverse());
    };
    add('T', SL2(one, one, zero, one));
    if (!o.is_real()) add('W', SL2(one, QuadInt(o, 0, 1), zero, one));
    const auto [b1, b2] = ctx.ideal().basis();
    add('L', SL2(one, zero, b1, one));
    if (!o.is_real()) add('M', SL2(one, zero, b2, one));
    if (ctx.ideal().is_unit()) add('S', SL2(zero, -one, one, zero));
    return out;
}

SL2 word_element(const BianchiContext& ctx, const std::string& word) {
    const auto gens = generators(ctx);
    if (gens.empty()) throw DomainError("empty generator set");
    SL2 g = SL2::identity(ctx.order());
    for (char ch : word) {
        auto it = std::find_if(gens.begin(), gens.end(), [ch](const auto& e) { return e.first == ch; });
        if (it == gens.end()) throw std::invalid_argument(std::string("unknown generator letter '") + ch + "'");
        g = g * it->second;
    }
    return g;
}

namespace {

char inverse_letter(char c) { return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c)) : static_cast<char>(std::tolower(c)); }

bool is_necklace_min(const std::string& w) {
    const std::size_t n = w.size();
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            const char a = w[(r + i) % n], b = w[i];
            if (a < b) return false;
            if (a > b) break;
        }
    }
    return true;
}

// Duval's algorithm over the alphabet {letters[0] < letters[1]}.
std::vector<std::string> lyndon_words(int n, const std::string& letters) {
    std::vector<std::string> out;
    const int k = static_cast<int>(letters.size());
    std::vector<int> w{-1};
    while (!w.empty()) {
        ++w.back();
        out.emplace_back();
        for (int i : w) out.back().push_back(letters[static_cast<std::size_t>(i)]);
        const std::size_t m = w.size();
        while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == k - 1) w.pop_back();
    }
    return out;
}

struct Candidate {
    double height;
    std::string word;
};

}  // namespace

std::vector<SpectrumPoint> spectrum_sample(const BianchiContext& ctx, int word_length, WordMode mode) {
    if (word_length < 0) throw std::invalid_argument("word length must be nonnegative");
    std::vector<SpectrumPoint> out;
    if (ctx.is_trivial()) return out;
    const auto gens = generators(ctx);
    if (gens.empty()) throw DomainError("empty generator set");
    const CuspGroup& group = ctx.group();
    std::vector<Candidate> cands;
    auto consider = [&](const SL2& g, const std::string& word) {
        if (g.classify() != SL2::Kind::Loxodromic) return;
        cands.push_back({geodesic_height(g, group).height, word});
    };

    if (mode == WordMode::Positive) {
        const SL2& T = gens[0].second;
        auto lit = std::find_if(gens.begin(), gens.end(), [](const auto& e) { return e.first == 'L'; });
        const SL2& L = lit->second;
        for (const auto& w : lyndon_words(word_length, "LT")) {
            SL2 g = SL2::identity(ctx.order());
            for (char ch : w) g = g * (ch == 'T' ? T : L);
            // read with T first so witnesses look like T^a L^b ...
            std::string word = w;
            std::rotate(word.begin(), std::find(word.begin(), word.end(), 'T'), word.end());
            consider(g, word);
        }
    } else {
        std::string word;
        std::vector<SL2> prefix{SL2::identity(ctx.order())};
        std::function<void()> dfs = [&]() {
            if (!word.empty() && word.front() != inverse_letter(word.back()) && is_necklace_min(word)) consider(prefix.back(), word);
            if (static_cast<int>(word.size()) == word_length) return;
            for (const auto& [name, g] : gens) {
                if (!word.empty() && name == inverse_letter(word.back())) continue;
                // a necklace representative starts with its smallest letter
                if (!word.empty() && name < word.front()) continue;
                word.push_back(name);
                prefix.push_back(prefix.back() * g);
                dfs();
                prefix.pop_back();
                word.pop_back();
            }
        };
        dfs();
    }

    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.height != b.height) return a.height < b.height;
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
    });
    std::size_t i = 0;
    while (i < cands.size()) {
        std::size_t j = i;
        std::size_t pick = i;
        while (j < cands.size() && cands[j].height - cands[i].height <= 1e-9) {
            const auto& a = cands[j];
            const auto& b = cands[pick];
            if (a.word.size() < b.word.size() || (a.word.size() == b.word.size() && a.word < b.word)) pick = j;
            ++j;
        }
        out.push_back({cands[pick].height, cands[pick].word, true});
        i = j;
    }
    return out;
}

}  // namespace lagspec
