#pragma once

// Upper half-plane / half-space geometry with the cusp at infinity and the
// horoball {height >= 1}.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lagspec/estimator.hpp"
#include "lagspec/numkit.hpp"

namespace lagspec {

/// Point of H^2 (imag(z) == 0) or H^3.
struct ModelPoint {
    std::complex<double> z;
    double h = 1.0;
};

double busemann_height(const ModelPoint& p);
double hyperbolic_distance(const ModelPoint& p, const ModelPoint& q);

/// Boundary point with optional exact form.
struct BoundaryPoint {
    std::complex<long double> z;
    std::optional<Literal> exact;

    static BoundaryPoint from_literal(const Literal& lit);
    static BoundaryPoint from_complex(std::complex<long double> z);
    static BoundaryPoint from_surd(const QuadSurd& x);
    static BoundaryPoint parse(std::string_view text);
    bool is_exact() const { return exact.has_value() && exact->exact; }
    bool is_real() const { return z.imag() == 0.0L; }
    std::string to_string() const;
};

/// Floating Moebius map with ad - bc = 1.
struct Mobius {
    std::complex<double> a{1}, b{0}, c{0}, d{1};

    Mobius() = default;
    /// Throws DomainError unless |ad - bc - 1| <= 1e-12 (relative to the entries).
    Mobius(std::complex<double> a, std::complex<double> b, std::complex<double> c, std::complex<double> d);

    ModelPoint apply(const ModelPoint& p) const;
    std::complex<double> apply_boundary(std::complex<double> z) const;
    Mobius operator*(const Mobius& o) const;
};

/// Exact element of SL2 over an order (or over Z).
class SL2 {
public:
    /// Throws DomainError("not in group") unless ad - bc == 1.
    SL2(QuadInt a, QuadInt b, QuadInt c, QuadInt d);
    static SL2 identity(const OrderSpec& order);

    const QuadInt& a() const { return a_; }
    const QuadInt& b() const { return b_; }
    const QuadInt& c() const { return c_; }
    const QuadInt& d() const { return d_; }
    const OrderSpec& order() const { return a_.order(); }
    QuadInt trace() const { return a_ + d_; }
    SL2 inverse() const;
    SL2 operator*(const SL2& o) const;
    Mobius to_mobius() const;
    std::string to_string() const;

    enum class Kind { Identity, Parabolic, Elliptic, Loxodromic };
    Kind classify() const;

private:
    QuadInt a_, b_, c_, d_;
};

std::string to_string(SL2::Kind k);

/// Cusp-stabilised group. Trivial, or Gamma_0(I) in SL2(O): matrices over O
/// whose lower-left entry lies in I. The modular group is O = Z, I = Z.
class CuspGroup {
public:
    static CuspGroup trivial();
    static CuspGroup modular();
    static CuspGroup bianchi(const OrderSpec& order, const IdealSpec& ideal);

    bool is_trivial() const { return trivial_; }
    bool is_real() const { return order_.is_real(); }
    const OrderSpec& order() const { return order_; }
    const IdealSpec& ideal() const { return ideal_; }
    const std::vector<QuadInt>& units() const { return units_; }
    bool contains(const SL2& g) const;
    /// (c, d) can be the bottom row of a group element.
    bool is_row(const QuadInt& c, const QuadInt& d) const;
    /// Covering radius of the translation lattice O.
    double covering_radius() const;
    std::string to_string() const;

    /// Nonzero c in I with N(c) <= bound, one of each pair +-c, ordered by norm.
    std::vector<QuadInt> lower_left_entries(double norm_bound) const;
    /// d in O with |d - center| <= radius.
    void for_each_in_disc(std::complex<double> center, double radius, const std::function<void(const QuadInt&)>& fn) const;

private:
    CuspGroup(bool trivial, OrderSpec order, IdealSpec ideal);
    bool trivial_;
    OrderSpec order_;
    IdealSpec ideal_;
    std::vector<QuadInt> units_;
};

struct HeightResult {
    double height = 0;
    QuadInt c, d;  // bottom row attaining the sup (c = 0 for the identity class)
    bool certified = false;
    double needed_cutoff = 0;  // N(c) bound that would certify the result
};

/// sup over bottom rows (c, d) of log(h / (|cz + d|^2 + |c|^2 h^2)), rows
/// enumerated with N(c) <= cutoff. Certified when no row beyond the cutoff
/// can beat the result.
HeightResult quotient_height(const ModelPoint& p, const CuspGroup& g, double cutoff);

/// Exact-row evaluation of c x + d for a real boundary point.
class LinearForm {
public:
    explicit LinearForm(const QuadSurd& x);
    explicit LinearForm(long double x);
    long double operator()(std::int64_t c, std::int64_t d) const;
    long double value() const { return approx_; }
    bool exact() const { return exact_; }

private:
    bool exact_ = false;
    bool fast_ = false;
    QuadSurd surd_;
    long double approx_ = 0;
    __int128 a_ = 0, b_ = 0, c_ = 1, d_ = 0;
    long double root_ = 0;
};

/// c z + d for a fixed boundary point z, evaluated per row so that each
/// lattice vector keeps full relative precision.
using RowEvaluator = std::function<std::complex<long double>(const QuadInt& c, const QuadInt& d)>;

struct Row {
    QuadInt c, d;
    long double q = 0;  // |c z + d|^2 + |c|^2 h^2 at the last height
};

/// Height of (z, h) for every h by reducing the lattice of admissible rows
/// (c, d) in I x O, a Z-lattice of rank 2 or 4, under the positive form
/// |c z + d|^2 + |c|^2 h^2 (LLL, then complete short-vector enumeration).
/// The basis is kept between calls, so sweeping h is cheap.
class RowReducer {
public:
    RowReducer(const CuspGroup& g, RowEvaluator eval);
    /// Certified height; the short admissible rows found are kept in short_rows().
    HeightResult height(long double h);
    const std::vector<Row>& short_rows() const { return short_; }

private:
    struct Vec {
        QuadInt c, d;
        std::complex<long double> l, cv;
    };
    long double ip(const Vec& u, const Vec& v) const;
    void refresh(Vec& v) const;
    void lll();

    const CuspGroup* group_;
    RowEvaluator eval_;
    std::vector<Vec> basis_;
    std::vector<Row> short_;
    long double h2_ = 1;
};

RowEvaluator make_evaluator(const BoundaryPoint& x);

/// Hyperbolic distance between {height >= 1} and its image under g, found by
/// mapping the point above -d/c and measuring to the image horoball top.
double horoball_penetration(const Mobius& g);
double horoball_penetration(const SL2& g);

/// 2 log|q|.
double D_of_r(const QuadInt& q);
double D_of_r(std::int64_t q);

struct CuspidalResult {
    double distance = 0;
    QuadInt translation;  // v is moved to unit_square * v + translation
    QuadInt unit_square;
};

/// min over the cusp stabiliser (z -> u^2 z + b) of |u - g v|.
CuspidalResult cuspidal_distance(std::complex<double> u, std::complex<double> v, const CuspGroup& g);

struct CuspTest {
    bool parabolic = false;
    bool heuristic = false;  // decided by the float denominator bound
};

/// Is x a cusp of the group (Q for the modular group, K for Bianchi groups)?
/// Exact inputs are decided exactly; float inputs use a denominator bound of 1e6.
CuspTest cusp_test(const BoundaryPoint& x, const CuspGroup& g);

/// Geodesic between two boundary points, optionally with a hyperbolic
/// element whose axis it is (enables the certificate).
struct Axis {
    BoundaryPoint plus;
    BoundaryPoint minus;
    std::optional<SL2> element;
};

struct GeodesicHeight {
    double height = 0;
    QuadInt c, d;
    bool certified = false;
};

/// log(|xi+ - xi-| / 2) - inf over rows of log|(c xi+ + d)(c xi- + d)|.
/// Rows are enumerated with |c| <= cutoff; when the axis carries its
/// loxodromic element the search is certified through the automorph.
GeodesicHeight geodesic_height(const Axis& axis, const CuspGroup& g, double cutoff);
/// Exact route for the axis of a loxodromic element of the group.
GeodesicHeight geodesic_height(const SL2& element, const CuspGroup& g);

struct ExcursionOptions {
    int depth = 40;
    double t0 = 6.0;
    double ratio = 1.05;
    double window_fraction = 0.6;
    double max_substep = 0.25;
};

struct ExcursionResult {
    double estimate = 0;
    EstimatorTrace trace{Direction::Max};
    std::string witness;
    bool exact_rows = false;
    bool heuristic_cusp_check = false;
    double window_begin = 0;
    double window_end = 0;
};

/// limsup of the quotient height along the vertical geodesic from infinity
/// to x, parametrised so that height(t) = e^{-t}.
ExcursionResult excursion_limsup(const BoundaryPoint& x, const CuspGroup& g, const ExcursionOptions& opt = {});

}  // namespace lagspec
