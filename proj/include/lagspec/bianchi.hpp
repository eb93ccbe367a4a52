#pragma once

// Congruence families E_I over an imaginary quadratic order (or over Z),
// the constant c_I(x), loxodromic axes and the closed-geodesic sampler.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lagspec/estimator.hpp"
#include "lagspec/hypgeo.hpp"
#include "lagspec/numkit.hpp"

namespace lagspec {

/// Gamma_0(I) in SL2(O) with its cusp stabiliser z -> u^2 z + b.
class BianchiContext {
public:
    BianchiContext(const OrderSpec& order, const IdealSpec& ideal);
    static BianchiContext modular();
    /// No group at all: the sampler returns nothing.
    static BianchiContext trivial();

    bool is_trivial() const { return group_.is_trivial(); }

    const OrderSpec& order() const { return group_.order(); }
    const IdealSpec& ideal() const { return group_.ideal(); }
    const std::vector<QuadInt>& units() const { return group_.units(); }
    const CuspGroup& group() const { return group_; }
    std::string to_string() const;

private:
    explicit BianchiContext(CuspGroup g) : group_(std::move(g)) {}
    CuspGroup group_;
};

struct FractionPoint {
    QuadInt p, q;
    std::complex<double> value() const;
    bool operator==(const FractionPoint&) const = default;
};

bool is_in_EI(const BianchiContext& ctx, const QuadInt& p, const QuadInt& q);

/// Every (p, q) in E_I with 1 <= N(q) <= norm_bound, one p per class mod qO,
/// chosen with p/q in the cell [0,1) + [0,1) w. Ordered by N(q), then
/// lexicographically.
std::vector<FractionPoint> enumerate_EI(const BianchiContext& ctx, std::int64_t norm_bound);

/// Coprime numerator p minimising |q x - p|.
QuadInt best_numerator(const BianchiContext& ctx, std::complex<long double> x, const QuadInt& q);

/// Image of p/q under the cusp stabiliser that lies nearest to x.
FractionPoint nearest_translate(const BianchiContext& ctx, std::complex<long double> x, const FractionPoint& f);

struct CIEstimate {
    double value = 0;
    EstimatorTrace trace{Direction::Min};
    FractionPoint witness;
    std::int64_t min_norm = 0;  // smallest N(q) in the window
    bool heuristic_cusp_check = false;
};

/// min of N(q) |x - p/q| over E_I with min_norm <= N(q) <= norm_bound, the
/// best p taken for each q. min_norm = 0 selects ceil(sqrt(norm_bound)).
/// Shells double in N(q).
CIEstimate c_I_estimate(const BianchiContext& ctx, const BoundaryPoint& x, std::int64_t norm_bound, std::int64_t min_norm = 0);

/// Fixed points ((a - d) +- sqrt(delta)) / (2c) of a loxodromic element.
struct LoxodromicAxis {
    QuadInt shift;         // a - d
    QuadInt discriminant;  // tr^2 - 4
    QuadInt denominator;   // 2c
    BoundaryPoint plus;    // attracting
    BoundaryPoint minus;
    std::string to_string() const;
};

LoxodromicAxis loxodromic_axis(const SL2& g);

struct SpectrumPoint {
    double height = 0;
    std::string witness;
    bool certified = false;
};

enum class WordMode {
    Free,      // cyclically reduced words in the generators and their inverses
    Positive,  // Lyndon words in T and L
};

/// Letters of the generating set: T/t and W/w translate by 1 and w, L/l and
/// M/m are lower triangular with entries from a Z-basis of I, S/s is the
/// involution when I = O. Lower case is the inverse.
std::vector<std::pair<char, SL2>> generators(const BianchiContext& ctx);
SL2 word_element(const BianchiContext& ctx, const std::string& word);

/// Heights of the closed geodesics of words up to word_length, deduplicated
/// at 1e-9 (shortest witness kept), sorted by height.
std::vector<SpectrumPoint> spectrum_sample(const BianchiContext& ctx, int word_length, WordMode mode = WordMode::Free);

}  // namespace lagspec
