#include "lagspec/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "lagspec/bianchi.hpp"
#include "lagspec/contfrac.hpp"
#include "lagspec/heis.hpp"
#include "lagspec/hypgeo.hpp"
#include "lagspec/spectra.hpp"

namespace lagspec {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

const char* flag(bool b) { return b ? "true" : "false"; }

// JSON numbers go through the same 15-digit rendering as CSV.
ordered_json jnum(double v) {
    if (!std::isfinite(v)) return nullptr;
    return ordered_json::parse(num(v));
}

struct Emitter {
    const RunConfig& cfg;
    std::ostream& out;
    bool json() const { return cfg.format == "json"; }
};

void emit_trace_csv(std::ostream& os, const EstimatorTrace& t) {
    os << "\ncutoff,running,witness,certified\n";
    for (const auto& s : t.shells()) os << num(s.cutoff) << ',' << num(s.value) << ',' << csv_field(s.witness) << ',' << flag(s.certified) << '\n';
}

ordered_json trace_json(const EstimatorTrace& t) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : t.shells()) {
        arr.push_back({{"cutoff", jnum(s.cutoff)}, {"running", jnum(s.value)}, {"witness", s.witness}, {"certified", s.certified}});
    }
    return arr;
}

struct Setting {
    SettingTag tag;
    std::optional<OrderSpec> order;
    std::optional<IdealSpec> ideal;
};

Setting make_setting(const RunConfig& cfg) {
    Setting s;
    if (cfg.setting == "rational") {
        s.tag.kind = SettingTag::Kind::Rational;
        return s;
    }
    if (cfg.m < 1) throw std::invalid_argument("--m must be a positive squarefree integer");
    s.order = OrderSpec::maximal(cfg.m);
    s.ideal = IdealSpec::parse(*s.order, cfg.ideal);
    s.tag.kind = cfg.setting == "bianchi" ? SettingTag::Kind::Bianchi : SettingTag::Kind::Heisenberg;
    s.tag.m = cfg.m;
    s.tag.ideal = s.ideal->to_string();
    s.tag.unit_ideal = s.ideal->is_unit();
    return s;
}

BianchiContext make_context(const Setting& s) {
    if (!s.order) return BianchiContext::modular();
    return BianchiContext(*s.order, *s.ideal);
}

// CF period read off a positive word T^a1 L^a2 ...
std::vector<std::int64_t> period_of(const std::string& word) {
    std::vector<std::int64_t> p;
    for (std::size_t i = 0; i < word.size();) {
        std::size_t j = i;
        while (j < word.size() && word[j] == word[i]) ++j;
        p.push_back(static_cast<std::int64_t>(j - i));
        i = j;
    }
    return p;
}

SpectrumSample build_spectrum(const RunConfig& cfg, const Setting& st, const std::string& words) {
    SpectrumSample sample(st.tag);
    const WordMode mode = words == "positive" ? WordMode::Positive : WordMode::Free;
    if (st.tag.kind != SettingTag::Kind::Heisenberg) {
        const int len = cfg.word_length > 0 ? cfg.word_length : (st.order ? 4 : 8);
        for (const auto& p : spectrum_sample(make_context(st), len, mode)) sample.add_height(p.height, p.witness, p.certified);
        return sample;
    }
    // c' at x = (1 + s i, 1 + i) for the periodic numbers s of positive words
    const int len = cfg.word_length > 0 ? cfg.word_length : 6;
    const std::int64_t nb = cfg.norm_bound > 0 ? cfg.norm_bound : 2500;
    const BianchiContext z = BianchiContext::modular();
    std::vector<std::string> seen;
    for (const auto& p : spectrum_sample(z, len, WordMode::Positive)) {
        CFWord w;
        w.preperiod = {0};
        w.period = period_of(p.witness);
        const long double s = value_of(w).to_long_double();
        const HeisPoint x(std::complex<long double>(1.0L, s), std::complex<long double>(1.0L, 1.0L));
        const auto est = c_prime_estimate(*st.order, *st.ideal, x, nb);
        sample.add_value(est.value, "x=" + x.to_string() + " s=" + w.to_string(), false);
    }
    return sample;
}

CFWord word_from(const std::string& cf, const std::string& x) {
    if (!cf.empty()) return CFWord::parse(cf);
    if (x.empty()) throw std::invalid_argument("give --cf or --x");
    const Literal lit = parse_literal(x);
    if (!lit.exact) throw std::invalid_argument("--x must be an exact quadratic literal in the rational setting");
    const auto s = lit.as_surd();
    if (!s) throw std::invalid_argument("--x must be a real quadratic literal in the rational setting");
    if (s->is_rational()) throw DomainError("rational input");
    return expand(*s);
}

std::vector<QuadInt> parse_entries(const OrderSpec& o, const std::string& text, std::size_t n) {
    std::vector<QuadInt> out;
    std::string cur;
    std::stringstream ss(text);
    while (std::getline(ss, cur, ',')) out.push_back(QuadInt::parse(o, cur));
    if (out.size() != n) throw std::invalid_argument("expected " + std::to_string(n) + " comma-separated entries in '" + text + "'");
    return out;
}

// ----------------------------------------------------------- commands

struct Args {
    std::string cf, x, point, matrix, c, words = "free";
    double h = 0;
    double cutoff = 1e6;
    double eps = 1e-3;
    int k = 5;
    std::int64_t min_norm = 0;
    bool trivial = false;
    std::vector<std::string> excursions;
};

void cmd_approx_const(const RunConfig& cfg, const Args& a, std::ostream& os) {
    const Setting st = make_setting(cfg);
    const bool json = cfg.format == "json";
    if (st.tag.kind == SettingTag::Kind::Rational) {
        const CFWord w = word_from(a.cf, a.x);
        const auto r = approx_constant(w);
        if (json) {
            ordered_json j{{"setting", st.tag.to_string()}, {"x", w.to_string()}, {"value", jnum(r.value)}, {"exact", r.exact}};
            j["exact_value"] = r.exact_value ? ordered_json(r.exact_value->to_string()) : ordered_json(nullptr);
            j["certified"] = r.trace.certified();
            if (!r.exact) j["window"] = {r.window_begin, r.window_end};
            j["trace"] = trace_json(r.trace);
            os << j.dump(2) << '\n';
            return;
        }
        os << "value,exact,exact_value,certified,window_begin,window_end\n";
        os << num(r.value) << ',' << flag(r.exact) << ',' << csv_field(r.exact_value ? r.exact_value->to_string() : "") << ','
           << flag(r.trace.certified()) << ',' << (r.exact ? "" : std::to_string(r.window_begin)) << ','
           << (r.exact ? "" : std::to_string(r.window_end)) << '\n';
        emit_trace_csv(os, r.trace);
        return;
    }
    const std::int64_t nb = cfg.norm_bound > 0 ? cfg.norm_bound : 10000;
    if (st.tag.kind == SettingTag::Kind::Bianchi) {
        if (a.x.empty()) throw std::invalid_argument("give --x");
        const auto r = c_I_estimate(make_context(st), BoundaryPoint::parse(a.x), nb, a.min_norm);
        const std::string wit = "(" + r.witness.p.to_string() + ")/(" + r.witness.q.to_string() + ")";
        if (json) {
            ordered_json j{{"setting", st.tag.to_string()}, {"x", a.x},           {"value", jnum(r.value)},
                           {"certified", false},           {"witness", wit},      {"min_norm", r.min_norm},
                           {"norm_bound", nb},             {"heuristic_cusp_check", r.heuristic_cusp_check}};
            j["trace"] = trace_json(r.trace);
            os << j.dump(2) << '\n';
            return;
        }
        os << "value,certified,witness,min_norm,norm_bound,heuristic_cusp_check\n";
        os << num(r.value) << ",false," << csv_field(wit) << ',' << r.min_norm << ',' << nb << ',' << flag(r.heuristic_cusp_check) << '\n';
        emit_trace_csv(os, r.trace);
        return;
    }
    if (a.x.empty()) throw std::invalid_argument("give --x as z_re,z_im;w_re,w_im");
    const HeisPoint x = HeisPoint::parse(a.x);
    const auto r = c_prime_estimate(*st.order, *st.ideal, x, nb, a.min_norm);
    const std::string wit = r.witness ? "(" + r.witness->a.to_string() + "," + r.witness->alpha.to_string() + "," + r.witness->c.to_string() + ")" : "";
    if (json) {
        ordered_json j{{"setting", st.tag.to_string()}, {"x", x.to_string()}, {"value", jnum(r.value)},     {"certified", false},
                       {"witness", wit},                {"min_norm", r.min_norm}, {"norm_bound", nb}, {"heuristic_rational_check", r.heuristic_rational_check}};
        j["trace"] = trace_json(r.trace);
        os << j.dump(2) << '\n';
        return;
    }
    os << "value,certified,witness,min_norm,norm_bound,heuristic_rational_check\n";
    os << num(r.value) << ",false," << csv_field(wit) << ',' << r.min_norm << ',' << nb << ',' << flag(r.heuristic_rational_check) << '\n';
    emit_trace_csv(os, r.trace);
}

void emit_sample(const RunConfig& cfg, const SpectrumSample& s, std::ostream& os) {
    // descending value, i.e. ascending height
    const auto& e = s.entries();
    if (cfg.format == "json") {
        ordered_json arr = ordered_json::array();
        for (auto it = e.rbegin(); it != e.rend(); ++it) {
            arr.push_back({{"value", jnum(it->value)}, {"height", jnum(it->height)}, {"witness", it->witness}, {"certified", it->certified}});
        }
        os << ordered_json{{"setting", s.setting().to_string()}, {"entries", arr}}.dump(2) << '\n';
        return;
    }
    os << "value,height,witness,certified\n";
    for (auto it = e.rbegin(); it != e.rend(); ++it) os << num(it->value) << ',' << num(it->height) << ',' << csv_field(it->witness) << ',' << flag(it->certified) << '\n';
}

void cmd_spectrum(const RunConfig& cfg, const Args& a, std::ostream& os) {
    const Setting st = make_setting(cfg);
    if (a.trivial) {
        emit_sample(cfg, SpectrumSample(st.tag), os);
        return;
    }
    emit_sample(cfg, build_spectrum(cfg, st, a.words), os);
}

void cmd_height(const RunConfig& cfg, const Args& a, std::ostream& os) {
    const Setting st = make_setting(cfg);
    if (st.tag.kind == SettingTag::Kind::Heisenberg) throw std::invalid_argument("height is defined for the rational and bianchi settings");
    const BianchiContext ctx = make_context(st);
    const CuspGroup group = a.trivial ? CuspGroup::trivial() : ctx.group();
    const bool json = cfg.format == "json";
    ordered_json j{{"setting", st.tag.to_string()}, {"group", group.to_string()}};
    std::vector<std::pair<std::string, std::string>> rows;
    if (!a.matrix.empty()) {
        const auto e = parse_entries(ctx.order(), a.matrix, 4);
        const SL2 g(e[0], e[1], e[2], e[3]);
        const auto r = geodesic_height(g, group);
        const double value = duality_inverse(r.height);
        rows = {{"kind", "closed-geodesic"}, {"height", num(r.height)}, {"value", num(value)}, {"c", r.c.to_string()}, {"d", r.d.to_string()},
                {"certified", flag(r.certified)}};
    } else if (!a.cf.empty() || (st.tag.kind == SettingTag::Kind::Rational && !a.x.empty() && a.h == 0)) {
        const CFWord w = word_from(a.cf, a.x);
        if (!w.is_periodic()) throw DomainError("excursion needs a periodic word or exact quadratic point");
        ExcursionOptions opt;
        opt.depth = cfg.depth;
        const auto r = excursion_limsup(BoundaryPoint::from_surd(value_of(w)), group, opt);
        rows = {{"kind", "excursion-limsup"}, {"height", num(r.estimate)}, {"value", num(duality_inverse(r.estimate))}, {"witness", r.witness},
                {"window_begin", num(r.window_begin)}, {"window_end", num(r.window_end)}, {"certified", "false"}};
    } else if (!a.x.empty() && a.h == 0) {
        ExcursionOptions opt;
        opt.depth = cfg.depth;
        const auto r = excursion_limsup(BoundaryPoint::parse(a.x), group, opt);
        rows = {{"kind", "excursion-limsup"}, {"height", num(r.estimate)}, {"value", num(duality_inverse(r.estimate))}, {"witness", r.witness},
                {"window_begin", num(r.window_begin)}, {"window_end", num(r.window_end)}, {"certified", "false"}};
    } else if (!a.x.empty()) {
        const BoundaryPoint z = BoundaryPoint::parse(a.x);
        const ModelPoint p{{static_cast<double>(z.z.real()), static_cast<double>(z.z.imag())}, a.h};
        const auto r = quotient_height(p, group, a.cutoff);
        rows = {{"kind", "point"}, {"busemann", num(busemann_height(p))}, {"height", num(r.height)}, {"c", r.c.to_string()}, {"d", r.d.to_string()},
                {"certified", flag(r.certified)}, {"needed_cutoff", num(r.needed_cutoff)}};
    } else {
        throw std::invalid_argument("give --matrix, --cf, or --x (with --vertical for a point)");
    }
    if (json) {
        for (const auto& [k, v] : rows) {
            if (v == "true" || v == "false") j[k] = v == "true";
            else if (k == "kind" || k == "c" || k == "d" || k == "witness") j[k] = v;
            else j[k] = ordered_json::parse(v);
        }
        os << j.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << rows[i].first;
    os << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << csv_field(rows[i].second);
    os << '\n';
}

void cmd_penetration(const RunConfig& cfg, const Args& a, std::ostream& os) {
    const Setting st = make_setting(cfg);
    std::vector<std::pair<std::string, double>> rows;
    if (st.tag.kind == SettingTag::Kind::Heisenberg) {
        if (a.c.empty()) throw std::invalid_argument("give --c");
        const QuadInt c = QuadInt::parse(*st.order, a.c);
        rows = {{"penetration", heis_penetration(c)}};
    } else {
        if (a.matrix.empty()) throw std::invalid_argument("give --matrix a,b,c,d");
        const OrderSpec o = st.order ? *st.order : OrderSpec::integers();
        const auto e = parse_entries(o, a.matrix, 4);
        const SL2 g(e[0], e[1], e[2], e[3]);
        const double geo = horoball_penetration(g);
        const double formula = D_of_r(g.c());
        rows = {{"penetration", geo}, {"two_log_abs_c", formula}, {"difference", std::fabs(geo - formula)}};
    }
    if (cfg.format == "json") {
        ordered_json j{{"setting", st.tag.to_string()}};
        for (const auto& [k, v] : rows) j[k] = jnum(v);
        os << j.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << rows[i].first;
    os << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << num(rows[i].second);
    os << '\n';
}

void cmd_duality_check(const RunConfig& cfg, const Args& a, std::ostream& os) {
    const Setting st = make_setting(cfg);
    if (st.tag.kind != SettingTag::Kind::Rational) throw std::invalid_argument("duality-check runs in the rational setting");
    const CFWord w = word_from(a.cf, a.x);
    if (!w.is_periodic()) throw DomainError("duality check needs a periodic word");
    const double c = approx_constant(w).value;
    const double dual = duality(c);
    ExcursionOptions opt;
    opt.depth = cfg.depth;
    const auto ex = excursion_limsup(BoundaryPoint::from_surd(value_of(w)), CuspGroup::modular(), opt);
    const double gap = std::fabs(ex.estimate - dual);
    if (cfg.format == "json") {
        os << ordered_json{{"x", w.to_string()}, {"c", jnum(c)}, {"dual_height", jnum(dual)}, {"excursion_limsup", jnum(ex.estimate)},
                           {"gap", jnum(gap)}, {"witness", ex.witness}}
                  .dump(2)
           << '\n';
        return;
    }
    os << "x,c,dual_height,excursion_limsup,gap\n";
    os << csv_field(w.to_string()) << ',' << num(c) << ',' << num(dual) << ',' << num(ex.estimate) << ',' << num(gap) << '\n';
}

void cmd_closure_report(const RunConfig& cfg, const Args& a, std::ostream& os) {
    const Setting st = make_setting(cfg);
    const SpectrumSample s = build_spectrum(cfg, st, a.words);
    std::vector<double> heights;
    for (const auto& wtext : a.excursions) {
        const CFWord w = CFWord::parse(wtext);
        if (!w.is_periodic()) throw DomainError("excursion words must be periodic");
        ExcursionOptions opt;
        opt.depth = cfg.depth;
        heights.push_back(excursion_limsup(BoundaryPoint::from_surd(value_of(w)), CuspGroup::modular(), opt).estimate);
    }
    const auto rep = closure_diagnostics(s, a.eps, a.k, heights);
    const auto bound = bound_check(s);
    if (cfg.format == "json") {
        ordered_json j;
        j["setting"] = st.tag.to_string();
        j["sample_size"] = s.size();
        j["max_value"] = rep.max_value ? jnum(*rep.max_value) : ordered_json(nullptr);
        j["min_height"] = rep.min_height ? jnum(*rep.min_height) : ordered_json(nullptr);
        j["accumulation_candidates"] = ordered_json::array();
        for (const auto& c : rep.accumulation_candidates) {
            j["accumulation_candidates"].push_back({{"value", jnum(c.value)}, {"height", jnum(c.height)}, {"count", c.count}});
        }
        j["duality_violations"] = rep.duality_violations;
        if (!rep.gaps.empty()) {
            j["nearest_geodesic_gaps"] = ordered_json::array();
            for (const auto& g : rep.gaps) {
                j["nearest_geodesic_gaps"].push_back({{"estimate", jnum(g.estimate)}, {"nearest_height", jnum(g.nearest_height)}, {"gap", jnum(g.gap)}});
            }
        }
        if (bound.bound) j["bound"] = {{"value", jnum(*bound.bound)}, {"holds", bound.bound_holds}, {"advisory", bound.advisory}};
        os << j.dump(2) << '\n';
        return;
    }
    os << "sample_size,max_value,min_height,bound,bound_holds\n";
    os << s.size() << ',' << (rep.max_value ? num(*rep.max_value) : "") << ',' << (rep.min_height ? num(*rep.min_height) : "") << ','
       << (bound.bound ? num(*bound.bound) : "") << ',' << (bound.bound ? flag(bound.bound_holds) : "") << '\n';
    os << "\ncandidate_value,candidate_height,count\n";
    for (const auto& c : rep.accumulation_candidates) os << num(c.value) << ',' << num(c.height) << ',' << c.count << '\n';
    if (!rep.gaps.empty()) {
        os << "\nestimate,nearest_height,gap\n";
        for (const auto& g : rep.gaps) os << num(g.estimate) << ',' << num(g.nearest_height) << ',' << num(g.gap) << '\n';
    }
    if (!rep.duality_violations.empty()) {
        os << "\nduality_violation\n";
        for (const auto& v : rep.duality_violations) os << csv_field(v) << '\n';
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Approximation constants, Lagrange-type spectra and cusp geometry", "lagspec"};
    app.require_subcommand(1);
    RunConfig cfg;
    Args a;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--setting", cfg.setting, "rational, bianchi or heisenberg")->check(CLI::IsMember({"rational", "bianchi", "heisenberg"}));
        sub->add_option("--m", cfg.m, "squarefree m for Q(sqrt(-m))")->check(CLI::PositiveNumber);
        sub->add_option("--ideal", cfg.ideal, "ideal generators, e.g. 1+w or 2,1+w");
        sub->add_option("--norm-bound", cfg.norm_bound, "norm cutoff for enumerations")->check(CLI::PositiveNumber);
        sub->add_option("--word-length", cfg.word_length, "maximal word length")->check(CLI::PositiveNumber);
        sub->add_option("--depth", cfg.depth, "excursion grid depth");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out, "write to FILE instead of stdout");
        sub->add_option("--seed", cfg.seed, "seed for randomised batteries");
    };

    auto* ac = app.add_subcommand("approx-const", "approximation constant c(x), c_I(x) or c'_I(x)");
    common(ac);
    ac->add_option("--cf", a.cf, "continued fraction word, e.g. \"[1; (2)]\"");
    ac->add_option("--x", a.x, "point: quadratic literal, or z_re,z_im;w_re,w_im");
    ac->add_option("--min-norm", a.min_norm, "smallest denominator norm in the window (default ceil(sqrt(norm-bound)))");

    auto* sp = app.add_subcommand("spectrum", "sampled spectrum as value,height,witness,certified");
    common(sp);
    sp->add_option("--words", a.words, "free or positive")->check(CLI::IsMember({"free", "positive"}));
    sp->add_flag("--trivial", a.trivial, "use the trivial group");

    auto* ht = app.add_subcommand("height", "quotient height of a point, geodesic height of an element, or excursion limsup");
    common(ht);
    ht->add_option("--x", a.x, "boundary point or horizontal coordinate");
    ht->add_option("--vertical", a.h, "vertical coordinate of a point")->check(CLI::PositiveNumber);
    ht->add_option("--cf", a.cf, "continued fraction word for the excursion limsup");
    ht->add_option("--matrix", a.matrix, "element a,b,c,d");
    ht->add_option("--cutoff", a.cutoff, "N(c) cutoff for point heights");
    ht->add_flag("--trivial", a.trivial, "use the trivial group");

    auto* pn = app.add_subcommand("penetration", "horoball penetration of an element");
    common(pn);
    pn->add_option("--matrix", a.matrix, "element a,b,c,d");
    pn->add_option("--c", a.c, "lower-left entry (heisenberg)");

    auto* dc = app.add_subcommand("duality-check", "compare -log(2 c(x)) with the excursion limsup");
    common(dc);
    dc->add_option("--cf", a.cf, "periodic continued fraction word");
    dc->add_option("--x", a.x, "exact real quadratic literal");

    auto* cr = app.add_subcommand("closure-report", "closure and boundedness diagnostics of a spectrum sample");
    common(cr);
    cr->add_option("--words", a.words, "free or positive")->check(CLI::IsMember({"free", "positive"}));
    cr->add_option("--eps", a.eps, "window for accumulation candidates")->check(CLI::PositiveNumber);
    cr->add_option("--k", a.k, "points needed inside the window")->check(CLI::Range(2, 1000));
    cr->add_option_function<std::string>("--excursion", [&a](const std::string& w) { a.excursions.push_back(w); },
                                          "periodic word whose excursion limsup is compared with the sample (repeatable)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->trigger_on_parse();

    std::vector<const char*> argv{"lagspec"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return 1;
    }

    std::ostringstream buf;
    try {
        if (*ac) cmd_approx_const(cfg, a, buf);
        else if (*sp) cmd_spectrum(cfg, a, buf);
        else if (*ht) cmd_height(cfg, a, buf);
        else if (*pn) cmd_penetration(cfg, a, buf);
        else if (*dc) cmd_duality_check(cfg, a, buf);
        else if (*cr) cmd_closure_report(cfg, a, buf);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    }
    if (cfg.out.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << cfg.out << '\n';
            return 1;
        }
        f << buf.str();
    }
    return 0;
}

}  // namespace lagspec
