#pragma once

#include "polyfold/poly.hpp"
#include "polyfold/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyfold {

struct Point2 {
    Rational x, y;
    Point2() : x(0), y(0) {}
    Point2(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}

    friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(const Rational& s, const Point2& p) { return {s * p.x, s * p.y}; }
    Point2 operator-() const { return {-x, -y}; }
    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
};

using Vec2 = Point2;

inline Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// Oriented line a*x + b*y + c; the associated constraint is >= 0.
struct LineFunctional {
    Rational a, b, c;

    Rational eval(const Point2& z) const { return a * z.x + b * z.y + c; }
    double eval_double(double x, double y) const { return a.to_double() * x + b.to_double() * y + c.to_double(); }

    // Integer coefficients with content 1; positive scaling only, so the
    // oriented side is preserved.
    LineFunctional primitive() const;
    SparsePoly to_poly() const; // two variables

    friend bool operator==(const LineFunctional& p, const LineFunctional& q) {
        return p.a == q.a && p.b == q.b && p.c == q.c;
    }
};

// z -> M z + t with exact entries.
struct AffineMap2 {
    Rational m00{1}, m01{0}, m10{0}, m11{1};
    Vec2 t;

    static AffineMap2 identity() { return {}; }
    static AffineMap2 from_columns(const Vec2& c0, const Vec2& c1, const Vec2& trans);

    bool is_identity() const;
    Rational det() const { return m00 * m11 - m01 * m10; }
    Point2 apply(const Point2& z) const { return {m00 * z.x + m01 * z.y + t.x, m10 * z.x + m11 * z.y + t.y}; }
    Vec2 apply_vec(const Vec2& v) const { return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y}; }
    AffineMap2 inverse() const; // throws (code "singular_map") when det == 0
};

// outer(inner(z))
AffineMap2 compose(const AffineMap2& outer, const AffineMap2& inner);

// Unbounded convex polygon given by its vertex chain and the two unbounded
// edge directions. A half-plane is the degenerate case: one base point on the
// boundary line, dir_in spans the line, and the region lies to its left.
struct VPolygon {
    enum class Kind { half_plane, polygon };
    Kind kind = Kind::polygon;
    std::vector<Point2> vertices;
    Vec2 dir_in;  // first unbounded edge leaves vertices.front() along this
    Vec2 dir_out; // last unbounded edge leaves vertices.back() along this
};

// VPolygon whose data passed convexity validation. Vertices are stored
// counter-clockwise after validate(); transformed() keeps the vertex order
// and tracks orientation instead.
class ValidatedPolygon {
public:
    // Rejects: zero directions, parallel unbounded edges, repeated vertices,
    // collinear boundary chains, non-convex chains, total turning >= pi.
    static ValidatedPolygon validate(const VPolygon& raw);

    const VPolygon& data() const { return data_; }
    VPolygon::Kind kind() const { return data_.kind; }
    bool is_half_plane() const { return data_.kind == VPolygon::Kind::half_plane; }
    size_t vertex_count() const { return is_half_plane() ? 0 : data_.vertices.size(); }
    size_t edge_count() const { return is_half_plane() ? 1 : data_.vertices.size() + 1; }
    int orientation() const { return orient_; }

    // One functional per edge, primitive, >= 0 exactly on the closed set.
    const std::vector<LineFunctional>& functionals() const { return functionals_; }

    // Travel direction of edge e along the boundary walk.
    Vec2 travel_dir(size_t e) const;
    // Vertices incident to edge e (0, 1 or 2 of them).
    std::vector<size_t> edge_vertices(size_t e) const;

    bool contains(const Point2& z) const; // closed set
    std::vector<size_t> zero_edges(const Point2& z) const;

    ValidatedPolygon transformed(const AffineMap2& map) const;

private:
    ValidatedPolygon() = default;
    void rebuild_functionals();

    VPolygon data_;
    int orient_ = 1;
    std::vector<LineFunctional> functionals_;
};

// Polygon with faces (edges, vertices) individually included or excluded.
class BasicPolygonalSet {
public:
    static BasicPolygonalSet closed(ValidatedPolygon p);
    BasicPolygonalSet& exclude_edge(size_t e);
    BasicPolygonalSet& exclude_vertex(size_t v);

    const ValidatedPolygon& polygon() const { return polygon_; }
    const std::vector<char>& edge_included() const { return edge_included_; }
    const std::vector<char>& vertex_included() const { return vertex_included_; }

    // Exact membership honoring the face flags.
    bool contains(const Point2& z) const;

private:
    explicit BasicPolygonalSet(ValidatedPolygon p) : polygon_(std::move(p)) {}

    ValidatedPolygon polygon_;
    std::vector<char> edge_included_, vertex_included_;
};

// Sufficient certificate that the set sits in the closed upper half-plane
// with every vertical fiber either empty or an upward ray: all of it above
// y = 0 and the unbounded directions x-components straddling zero.
bool is_curtain_certified(const BasicPolygonalSet& s);

struct NormalizeResult {
    AffineMap2 map;
    ValidatedPolygon image;
};

// Moves the next-to-last vertex to the origin and the last one to (1,0),
// leaving the polygon a curtain over the x-axis with strictly increasing
// vertex abscissas and no vertical bounded edges. Needs >= 2 vertices.
NormalizeResult normalize_step2(const ValidatedPolygon& p);

// Point where the last edge's supporting ray, pushed to the last vertex's
// abscissa, leaves the polygon: p_{m-2} + (a/alpha2) * dir_out with
// a = last abscissa. Input must be normalized as per normalize_step2.
Point2 compute_apex(const ValidatedPolygon& normalized);

struct RelocateResult {
    AffineMap2 map;
    ValidatedPolygon image;
    Point2 apex_image;
};

// Sends the last vertex to the origin and the outgoing direction to (1,0)
// while keeping the polygon a curtain; the apex lands strictly inside the
// open first quadrant.
RelocateResult relocate_tau1(const ValidatedPolygon& normalized, const Point2& apex);

// Sends the last bounded edge onto [-1,0] x {0} and the outgoing direction
// to (0,1); the image lives in the second quadrant.
NormalizeResult relocate_tau2(const ValidatedPolygon& p_prime);

// Intersection point of two non-parallel lines.
std::optional<Point2> intersect_lines(const LineFunctional& f, const LineFunctional& g);

} // namespace polyfold
