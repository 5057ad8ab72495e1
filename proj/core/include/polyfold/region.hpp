#pragma once

#include "polyfold/geometry.hpp"
#include "polyfold/rational.hpp"

#include <vector>

namespace polyfold {

struct HalfPlaneConstraint {
    LineFunctional f;
    bool strict = false;
};

// Convex set cut out by half-plane constraints minus finitely many points.
// span_points / span_dirs describe a generating skeleton (points convex-
// combined, directions added with nonnegative weights) used by samplers;
// membership is always re-checked exactly against the constraints.
struct ConvexPiece {
    std::vector<HalfPlaneConstraint> constraints;
    std::vector<Point2> excluded_points;
    std::vector<Point2> span_points;
    std::vector<Vec2> span_dirs;

    bool contains(const Point2& z) const;
};

// Finite union of convex pieces.
struct Region {
    std::vector<ConvexPiece> pieces;

    bool contains(const Point2& z) const;
    bool empty() const { return pieces.empty(); }

    // Rough proximity of a point to the region's boundary lines (doubles,
    // gradient-normalized); used only to classify coverage misses.
    double boundary_distance(double x, double y) const;
};

// The set as a single convex piece. Excluded edges become strict
// constraints, so each such edge must have its endpoint vertices excluded
// too; excluded vertices become excluded points.
Region region_of(const BasicPolygonalSet& s);

// (]c,d[ intersected with the vertical constraints) x [0, inf).
// verticals are carried over from the folded set; both-infinite intervals
// are fine here (the strip is then bounded by verticals alone, if any).
Region strip_region(const ExtRational& c, const ExtRational& d,
                    const std::vector<HalfPlaneConstraint>& verticals);

// Open interior: every edge constraint strict, no vertices included.
Region strict_interior(const ValidatedPolygon& p);

Region region_union(Region a, const Region& b);
Region transformed(const Region& r, const AffineMap2& map);

} // namespace polyfold
