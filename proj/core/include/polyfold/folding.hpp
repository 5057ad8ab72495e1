#pragma once

#include "polyfold/geometry.hpp"
#include "polyfold/poly.hpp"
#include "polyfold/rational.hpp"
#include "polyfold/region.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyfold {

// The published construction prints one fold with the opposite sign of psi;
// paper_step4 reproduces that variant so its failure is observable.
enum class SignVariant { lemma, paper_step4 };

// Interval polynomial: negative strictly inside ]c,d[, nonnegative outside.
// Exactly one endpoint may be infinite.
SparsePoly build_psi(const ExtRational& c, const ExtRational& d);

// Indices of family members not divisible by (x - r) for any r in ]c,d[.
// Linear members are screened directly; higher degrees via the gcd of their
// y-coefficient polynomials and a Sturm root count.
std::vector<size_t> select_family_prime(const std::vector<SparsePoly>& family,
                                        const ExtRational& c, const ExtRational& d);

struct FoldSpec {
    std::vector<SparsePoly> family; // boundary functionals of the folded set
    std::vector<size_t> family_prime;
    ExtRational c, d;
    SparsePoly psi{2}, phi{2}, h{2};
    SignVariant variant = SignVariant::lemma;

    // 1 + psi*phi; h = y * gamma^2.
    SparsePoly gamma_poly() const;
    // x = r slice of h, univariate in the fiber coordinate.
    SparsePoly slice(const Rational& r) const;
    Point2 apply(const Point2& z) const { return {z.x, h.eval({z.x, z.y})}; }
};

// Vertical-fiber view of a certified curtain: each fiber is empty or an
// upward ray with a known origin and closedness.
class CurtainSet {
public:
    struct Fiber {
        Rational origin;
        bool closed;
    };

    static CurtainSet of(const BasicPolygonalSet& s); // requires the curtain certificate

    std::optional<Fiber> fiber(const Rational& r) const;
    bool in_projection(const Rational& r) const { return fiber(r).has_value(); }

    // Projection of the set onto the x-axis, possibly unbounded.
    const ExtRational& proj_lo() const { return proj_lo_; }
    const ExtRational& proj_hi() const { return proj_hi_; }

    const std::vector<HalfPlaneConstraint>& constraints() const { return constraints_; }
    const std::vector<HalfPlaneConstraint>& vertical_constraints() const { return verticals_; }
    const std::vector<Point2>& excluded_points() const { return excluded_; }

private:
    std::vector<HalfPlaneConstraint> constraints_; // all, strictness from face flags
    std::vector<HalfPlaneConstraint> verticals_;   // the b == 0 subset
    std::vector<Point2> excluded_;
    ExtRational proj_lo_ = ExtRational::neg_inf();
    ExtRational proj_hi_ = ExtRational::pos_inf();
};

struct FoldData {
    FoldSpec spec;
    CurtainSet input;
    std::optional<BasicPolygonalSet> source; // the set the fold was built from
    Region input_region;   // the folded set itself
    Region declared_image; // input set union the filled strip
};

// Builds the fold of a certified curtain over ]c,d[:
//   f(x,y) = (x, y * (1 + psi(x) * phi(x,y))^2)
// with phi the product of the kept family members. Rejects sets that fail
// the curtain certificate and intervals with both endpoints infinite.
FoldData build_fold_stage(const BasicPolygonalSet& s, const ExtRational& c, const ExtRational& d,
                          SignVariant variant = SignVariant::lemma);

struct CheckItem {
    std::string name;
    bool ok;
    std::string note;
};

struct FiberCertificate {
    Rational r;
    int tag = 1; // 1: fiber preserved, 2: fiber filled down to 0
    Rational origin{0};
    bool origin_closed = true;
    std::vector<CheckItem> checks;
    // tag 2: rational enclosure of a gamma sign change (width <= 2^-40,
    // strictly inside the open fiber), or an exact root when one is hit.
    std::optional<std::pair<Rational, Rational>> bracket;
    std::optional<Rational> exact_root;
    bool valid = false;
};

// Exact per-fiber certificate at abscissa r (must be in the projection):
// outside ]c,d[ the fiber maps into itself fixing its origin; inside, the
// image reaches 0 via a certified root of gamma_r.
FiberCertificate certify_fiber(const FoldSpec& spec, const CurtainSet& curtain, const Rational& r);

} // namespace polyfold
