#include "polyfold/region.hpp"
#include "polyfold/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polyfold {

bool ConvexPiece::contains(const Point2& z) const {
    for (const auto& c : constraints) {
        int s = c.f.eval(z).sign();
        if (s < 0 || (s == 0 && c.strict)) return false;
    }
    for (const auto& p : excluded_points)
        if (p == z) return false;
    return true;
}

bool Region::contains(const Point2& z) const {
    for (const auto& p : pieces)
        if (p.contains(z)) return true;
    return false;
}

double Region::boundary_distance(double x, double y) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& piece : pieces) {
        for (const auto& c : piece.constraints) {
            double a = c.f.a.to_double(), b = c.f.b.to_double();
            double norm = std::hypot(a, b);
            if (norm == 0.0) continue;
            best = std::min(best, std::abs(c.f.eval_double(x, y)) / norm);
        }
        for (const auto& p : piece.excluded_points)
            best = std::min(best, std::hypot(x - p.x.to_double(), y - p.y.to_double()));
    }
    return best;
}

Region region_of(const BasicPolygonalSet& s) {
    const ValidatedPolygon& p = s.polygon();
    ConvexPiece piece;
    for (size_t e = 0; e < p.edge_count(); ++e) {
        bool included = s.edge_included()[e] != 0;
        if (!included)
            for (size_t v : p.edge_vertices(e))
                require(s.vertex_included()[v] == 0, "unsupported_region",
                        "excluded edge with an included endpoint cannot be a convex piece");
        piece.constraints.push_back({p.functionals()[e], !included});
    }
    for (size_t v = 0; v < p.vertex_count(); ++v)
        if (s.vertex_included()[v] == 0) piece.excluded_points.push_back(p.data().vertices[v]);

    if (p.is_half_plane()) {
        const Point2& base = p.data().vertices[0];
        const Vec2& d = p.data().dir_in;
        piece.span_points = {base};
        piece.span_dirs = {d, -d, {-d.y, d.x}};
    } else {
        piece.span_points = p.data().vertices;
        piece.span_dirs = {p.data().dir_in, p.data().dir_out};
    }
    return Region{{std::move(piece)}};
}

Region strip_region(const ExtRational& c, const ExtRational& d,
                    const std::vector<HalfPlaneConstraint>& verticals) {
    require(!(c.is_finite() && d.is_finite()) || c.value() < d.value(), "bad_interval", "empty strip");
    ConvexPiece piece;
    piece.constraints.push_back({LineFunctional{Rational(0), Rational(1), Rational(0)}, false});
    if (c.is_finite())
        piece.constraints.push_back({LineFunctional{Rational(1), Rational(0), -c.value()}.primitive(), true});
    if (d.is_finite())
        piece.constraints.push_back({LineFunctional{Rational(-1), Rational(0), d.value()}.primitive(), true});
    for (const auto& v : verticals) {
        require(v.f.b.is_zero(), "bad_functional", "strip carries only vertical constraints");
        piece.constraints.push_back(v);
    }
    if (c.is_finite()) piece.span_points.push_back({c.value(), Rational(0)});
    if (d.is_finite()) piece.span_points.push_back({d.value(), Rational(0)});
    piece.span_dirs.push_back({Rational(0), Rational(1)});
    if (!c.is_finite()) piece.span_dirs.push_back({Rational(-1), Rational(0)});
    if (!d.is_finite()) piece.span_dirs.push_back({Rational(1), Rational(0)});
    if (piece.span_points.empty()) piece.span_points.push_back({Rational(0), Rational(0)});
    return Region{{std::move(piece)}};
}

Region strict_interior(const ValidatedPolygon& p) {
    Region r = region_of(BasicPolygonalSet::closed(p));
    for (auto& c : r.pieces[0].constraints) c.strict = true;
    return r;
}

Region region_union(Region a, const Region& b) {
    for (const auto& piece : b.pieces) a.pieces.push_back(piece);
    return a;
}

Region transformed(const Region& r, const AffineMap2& map) {
    AffineMap2 inv = map.inverse();
    Region out;
    for (const auto& piece : r.pieces) {
        ConvexPiece q;
        for (const auto& c : piece.constraints) {
            LineFunctional g;
            g.a = c.f.a * inv.m00 + c.f.b * inv.m10;
            g.b = c.f.a * inv.m01 + c.f.b * inv.m11;
            g.c = c.f.a * inv.t.x + c.f.b * inv.t.y + c.f.c;
            q.constraints.push_back({g.primitive(), c.strict});
        }
        for (const auto& p : piece.excluded_points) q.excluded_points.push_back(map.apply(p));
        for (const auto& p : piece.span_points) q.span_points.push_back(map.apply(p));
        for (const auto& v : piece.span_dirs) q.span_dirs.push_back(map.apply_vec(v));
        out.pieces.push_back(std::move(q));
    }
    return out;
}

} // namespace polyfold
