#include "lagspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "lagspec/numkit.hpp"

namespace lagspec {

double duality(double t) {
    if (!(t > 0)) throw DomainError("duality needs t > 0");
    return -std::log(2.0 * t);
}

double duality_inverse(double s) { return std::exp(-s) / 2.0; }

std::string SettingTag::to_string() const {
    switch (kind) {
        case Kind::Rational: return "rational";
        case Kind::Bianchi: return "bianchi(" + std::to_string(m) + "," + ideal + ")";
        case Kind::Heisenberg: return "heisenberg(" + std::to_string(m) + "," + ideal + ")";
    }
    return "unknown";
}

void SpectrumSample::add(SpectrumEntry e) {
    auto it = std::upper_bound(entries_.begin(), entries_.end(), e.value, [](double v, const SpectrumEntry& x) { return v < x.value; });
    entries_.insert(it, std::move(e));
}

void SpectrumSample::add_height(double height, std::string witness, bool certified) {
    add({duality_inverse(height), height, std::move(witness), certified});
}

void SpectrumSample::add_value(double value, std::string witness, bool certified) {
    add({value, duality(value), std::move(witness), certified});
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// Spacing shrinks toward the front of v (v[0] nearest the limit).
bool shrinking(const std::vector<double>& dist) {
    const std::size_t n = dist.size();
    const std::size_t mid = n / 2;
    const double near = dist[mid] - dist[0];
    const double far = dist[n - 1] - dist[mid];
    return far > 0 && 8.0 * near <= far;
}

}  // namespace

ClosureReport closure_diagnostics(const SpectrumSample& s, double eps, int k, const std::vector<double>& asymptotic_heights) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    ClosureReport r;
    const auto& e = s.entries();
    if (e.empty()) return r;
    r.max_value = e.back().value;
    double hmin = std::numeric_limits<double>::infinity();
    for (const auto& x : e) {
        hmin = std::min(hmin, x.height);
        const double expect = duality_inverse(x.height);
        if (std::fabs(expect - x.value) > 1e-12 * std::max(1.0, std::fabs(x.value))) {
            r.duality_violations.push_back(x.witness + ": value " + fmt(x.value) + " vs e^-height/2 = " + fmt(expect));
        }
    }
    r.min_height = hmin;

    std::vector<double> vals;
    for (const auto& x : e) vals.push_back(x.value);
    const auto n = static_cast<std::ptrdiff_t>(vals.size());
    const auto kk = static_cast<std::ptrdiff_t>(k);
    std::vector<AccumulationCandidate> found;
    for (std::ptrdiff_t j = 0; j + kk <= n; ++j) {
        // vals[j] is the lowest point of the run
        if (vals[j + kk - 1] - vals[j] < eps) {
            std::vector<double> d;
            for (std::ptrdiff_t i = 0; i < kk; ++i) d.push_back(vals[j + i] - vals[j]);
            if (shrinking(d)) {
                int count = 0;
                for (std::ptrdiff_t i = j; i < n && vals[i] - vals[j] < eps; ++i) ++count;
                found.push_back({vals[j], e[j].height, count});
            }
        }
    }
    // one candidate per eps-cluster, the one with most support
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    for (const auto& c : found) {
        if (!r.accumulation_candidates.empty() && c.value - r.accumulation_candidates.back().value < eps) {
            if (c.count > r.accumulation_candidates.back().count) r.accumulation_candidates.back() = c;
            continue;
        }
        r.accumulation_candidates.push_back(c);
    }

    for (double h : asymptotic_heights) {
        GapReport g;
        g.estimate = h;
        g.gap = std::numeric_limits<double>::infinity();
        for (const auto& x : e) {
            if (std::fabs(x.height - h) < g.gap) {
                g.gap = std::fabs(x.height - h);
                g.nearest_height = x.height;
            }
        }
        r.gaps.push_back(g);
    }
    return r;
}

nlohmann::json ClosureReport::to_json() const {
    nlohmann::json j;
    j["max_value"] = max_value ? nlohmann::json(*max_value) : nlohmann::json(nullptr);
    j["min_height"] = min_height ? nlohmann::json(*min_height) : nlohmann::json(nullptr);
    j["accumulation_candidates"] = nlohmann::json::array();
    for (const auto& c : accumulation_candidates) {
        j["accumulation_candidates"].push_back(
            {{"value", c.value}, {"height", c.height}, {"count", c.count}});
    }
    j["duality_violations"] = duality_violations;
    if (!gaps.empty()) {
        j["nearest_geodesic_gaps"] = nlohmann::json::array();
        for (const auto& g : gaps) j["nearest_geodesic_gaps"].push_back({{"estimate", g.estimate}, {"nearest_height", g.nearest_height}, {"gap", g.gap}});
    }
    return j;
}

BoundReport bound_check(const SpectrumSample& s) {
    BoundReport r;
    if (s.empty()) return r;
    r.empty = false;
    r.max_value = s.entries().back().value;
    r.min_height = std::numeric_limits<double>::infinity();
    for (const auto& x : s.entries()) r.min_height = std::min(r.min_height, x.height);
    const SettingTag& t = s.setting();
    if (t.kind == SettingTag::Kind::Rational) {
        r.bound = 1.0 / std::sqrt(5.0);
        r.bound_holds = r.max_value <= *r.bound + 1e-12;
    } else if (t.kind == SettingTag::Kind::Bianchi && t.m == 1 && t.unit_ideal) {
        r.bound = 1.0 / std::sqrt(3.0);
        r.bound_holds = r.max_value <= *r.bound + 1e-9;
        r.advisory = true;
    }
    return r;
}

nlohmann::json BoundReport::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    if (empty) return j;
    j["max_value"] = max_value;
    j["min_height"] = min_height;
    if (bound) {
        j["bound"] = *bound;
        j["bound_holds"] = bound_holds;
        j["advisory"] = advisory;
    }
    return j;
}

}  // namespace lagspec
