#pragma once

// Spectrum samples across settings, the duality t -> -log(2t) and
// closure / boundedness diagnostics.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lagspec {

/// -log(2t); throws DomainError for t <= 0.
double duality(double t);
/// e^{-s} / 2.
double duality_inverse(double s);

struct SpectrumEntry {
    double value = 0;
    double height = 0;
    std::string witness;
    bool certified = false;
};

struct SettingTag {
    enum class Kind { Rational, Bianchi, Heisenberg };
    Kind kind = Kind::Rational;
    std::int64_t m = 0;
    std::string ideal = "1";  // generators
    bool unit_ideal = true;
    /// "rational", "bianchi(m,I)" or "heisenberg(m,I)".
    std::string to_string() const;
};

class SpectrumSample {
public:
    explicit SpectrumSample(SettingTag setting = {}) : setting_(std::move(setting)) {}

    /// Adds an entry with value = duality_inverse(height).
    void add_height(double height, std::string witness, bool certified);
    /// Adds an entry with height = duality(value).
    void add_value(double value, std::string witness, bool certified);
    /// Adds a raw entry; the duality relation is checked by the diagnostics.
    void add(SpectrumEntry e);

    const SettingTag& setting() const { return setting_; }
    /// Sorted ascending by value.
    const std::vector<SpectrumEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

private:
    SettingTag setting_;
    std::vector<SpectrumEntry> entries_;
};

struct AccumulationCandidate {
    double value = 0;   // sample value nearest the limit
    double height = 0;
    int count = 0;      // points in [value, value + eps)
};

struct GapReport {
    double estimate = 0;        // supplied asymptotic height
    double nearest_height = 0;  // nearest closed-geodesic height in the sample
    double gap = 0;
};

struct ClosureReport {
    std::optional<double> max_value;
    std::optional<double> min_height;
    std::vector<AccumulationCandidate> accumulation_candidates;
    std::vector<std::string> duality_violations;
    std::vector<GapReport> gaps;
    nlohmann::json to_json() const;
};

/// Accumulation candidates are runs of at least k consecutive sample values
/// within eps that approach their lowest value from above: the lower half
/// of the run spans at most an eighth of the upper half. Each supplied
/// asymptotic height is matched with its nearest sample height.
ClosureReport closure_diagnostics(const SpectrumSample& s, double eps, int k = 5, const std::vector<double>& asymptotic_heights = {});

struct BoundReport {
    bool empty = true;
    double max_value = 0;
    double min_height = 0;
    std::optional<double> bound;  // known upper bound for the setting
    bool bound_holds = true;
    bool advisory = false;        // the bound is an external classical value
    nlohmann::json to_json() const;
};

/// Maximum value and minimum height. Rational samples are checked against
/// 1/sqrt5 + 1e-12, Gaussian samples against 1/sqrt3 + 1e-9 (advisory).
BoundReport bound_check(const SpectrumSample& s);

}  // namespace lagspec
