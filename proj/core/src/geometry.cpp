#include "polyfold/geometry.hpp"
#include "polyfold/error.hpp"

#include <algorithm>

namespace polyfold {

LineFunctional LineFunctional::primitive() const {
    require(!(a.is_zero() && b.is_zero()), "bad_functional", "zero linear part");
    // clear denominators
    mpz_class l(1);
    for (const Rational* r : {&a, &b, &c}) {
        mpz_class den = r->raw().get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        l = l / g * den;
    }
    Rational scale{mpq_class(l)};
    mpz_class na = (a * scale).raw().get_num();
    mpz_class nb = (b * scale).raw().get_num();
    mpz_class nc = (c * scale).raw().get_num();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nc.get_mpz_t());
    return {Rational(mpq_class(na / g)), Rational(mpq_class(nb / g)), Rational(mpq_class(nc / g))};
}

SparsePoly LineFunctional::to_poly() const {
    SparsePoly p(2);
    p.set_coeff({1, 0, 0}, a);
    p.set_coeff({0, 1, 0}, b);
    p.set_coeff({0, 0, 0}, c);
    return p;
}

AffineMap2 AffineMap2::from_columns(const Vec2& c0, const Vec2& c1, const Vec2& trans) {
    AffineMap2 m;
    m.m00 = c0.x;
    m.m10 = c0.y;
    m.m01 = c1.x;
    m.m11 = c1.y;
    m.t = trans;
    return m;
}

bool AffineMap2::is_identity() const {
    return m00 == Rational(1) && m11 == Rational(1) && m01.is_zero() && m10.is_zero() && t.is_zero();
}

AffineMap2 AffineMap2::inverse() const {
    Rational d = det();
    require(!d.is_zero(), "singular_map", "affine map is not invertible");
    AffineMap2 inv;
    inv.m00 = m11 / d;
    inv.m01 = -m01 / d;
    inv.m10 = -m10 / d;
    inv.m11 = m00 / d;
    inv.t = {-(inv.m00 * t.x + inv.m01 * t.y), -(inv.m10 * t.x + inv.m11 * t.y)};
    return inv;
}

AffineMap2 compose(const AffineMap2& outer, const AffineMap2& inner) {
    AffineMap2 r;
    r.m00 = outer.m00 * inner.m00 + outer.m01 * inner.m10;
    r.m01 = outer.m00 * inner.m01 + outer.m01 * inner.m11;
    r.m10 = outer.m10 * inner.m00 + outer.m11 * inner.m10;
    r.m11 = outer.m10 * inner.m01 + outer.m11 * inner.m11;
    r.t = outer.apply(inner.t);
    return r;
}

static std::vector<Vec2> travel_dirs(const VPolygon& p) {
    std::vector<Vec2> d;
    d.push_back(-p.dir_in);
    for (size_t i = 1; i < p.vertices.size(); ++i) d.push_back(p.vertices[i] - p.vertices[i - 1]);
    d.push_back(p.dir_out);
    return d;
}

ValidatedPolygon ValidatedPolygon::validate(const VPolygon& raw) {
    ValidatedPolygon out;
    out.data_ = raw;
    if (raw.kind == VPolygon::Kind::half_plane) {
        require(raw.vertices.size() == 1, "bad_polygon", "half-plane needs exactly one base point");
        require(!raw.dir_in.is_zero(), "bad_polygon", "half-plane direction is zero");
        out.rebuild_functionals();
        return out;
    }
    require(!raw.vertices.empty(), "bad_polygon", "polygon needs at least one vertex");
    require(!raw.dir_in.is_zero() && !raw.dir_out.is_zero(), "bad_polygon", "unbounded direction is zero");
    require(!cross(raw.dir_in, raw.dir_out).is_zero(), "parallel_unbounded_edges",
            "unbounded edges are parallel; such polygons are excluded");

    auto dirs = travel_dirs(raw);
    for (size_t i = 1; i < raw.vertices.size(); ++i)
        require(raw.vertices[i] != raw.vertices[i - 1], "degenerate_edge", "repeated vertex");

    int s = 0;
    for (size_t i = 0; i + 1 < dirs.size() && s == 0; ++i) s = cross(dirs[i], dirs[i + 1]).sign();
    require(s != 0, "collinear_vertices", "boundary has no corner");
    for (size_t i = 0; i < dirs.size(); ++i)
        for (size_t j = i + 1; j < dirs.size(); ++j) {
            int c = cross(dirs[i], dirs[j]).sign();
            if (c == 0 && j == i + 1) fail("collinear_vertices", "three consecutive boundary points are collinear");
            require(c == s, "non_convex", "boundary chain is not convex (or turns by >= pi)");
        }

    if (s < 0) {
        std::reverse(out.data_.vertices.begin(), out.data_.vertices.end());
        std::swap(out.data_.dir_in, out.data_.dir_out);
    }
    out.rebuild_functionals();
    return out;
}

void ValidatedPolygon::rebuild_functionals() {
    functionals_.clear();
    Rational o(orient_);
    if (is_half_plane()) {
        const Vec2& d = data_.dir_in;
        const Point2& b = data_.vertices[0];
        // left of the direction: cross(d, z - b) >= 0
        functionals_.push_back(LineFunctional{o * (-d.y), o * d.x, o * (d.y * b.x - d.x * b.y)}.primitive());
        return;
    }
    auto dirs = travel_dirs(data_);
    for (size_t e = 0; e < dirs.size(); ++e) {
        const Point2& base = data_.vertices[e == 0 ? 0 : e - 1];
        const Vec2& d = dirs[e];
        functionals_.push_back(
            LineFunctional{o * (-d.y), o * d.x, o * (d.y * base.x - d.x * base.y)}.primitive());
    }
}

Vec2 ValidatedPolygon::travel_dir(size_t e) const {
    require(e < edge_count(), "bad_polygon", "edge index out of range");
    if (is_half_plane()) return data_.dir_in;
    if (e == 0) return -data_.dir_in;
    if (e == data_.vertices.size()) return data_.dir_out;
    return data_.vertices[e] - data_.vertices[e - 1];
}

std::vector<size_t> ValidatedPolygon::edge_vertices(size_t e) const {
    require(e < edge_count(), "bad_polygon", "edge index out of range");
    if (is_half_plane()) return {};
    size_t m = data_.vertices.size();
    if (e == 0) return {0};
    if (e == m) return {m - 1};
    return {e - 1, e};
}

bool ValidatedPolygon::contains(const Point2& z) const {
    for (const auto& f : functionals_)
        if (f.eval(z).sign() < 0) return false;
    return true;
}

std::vector<size_t> ValidatedPolygon::zero_edges(const Point2& z) const {
    std::vector<size_t> out;
    for (size_t e = 0; e < functionals_.size(); ++e)
        if (functionals_[e].eval(z).is_zero()) out.push_back(e);
    return out;
}

ValidatedPolygon ValidatedPolygon::transformed(const AffineMap2& map) const {
    Rational d = map.det();
    require(!d.is_zero(), "singular_map", "cannot transform by a singular map");
    ValidatedPolygon out;
    out.data_ = data_;
    for (auto& v : out.data_.vertices) v = map.apply(v);
    out.data_.dir_in = map.apply_vec(data_.dir_in);
    out.data_.dir_out = map.apply_vec(data_.dir_out);
    out.orient_ = d.sign() > 0 ? orient_ : -orient_;
    out.rebuild_functionals();
    return out;
}

BasicPolygonalSet BasicPolygonalSet::closed(ValidatedPolygon p) {
    BasicPolygonalSet s(std::move(p));
    s.edge_included_.assign(s.polygon_.edge_count(), 1);
    s.vertex_included_.assign(s.polygon_.vertex_count(), 1);
    return s;
}

BasicPolygonalSet& BasicPolygonalSet::exclude_edge(size_t e) {
    require(e < edge_included_.size(), "bad_polygon", "edge index out of range");
    edge_included_[e] = 0;
    return *this;
}

BasicPolygonalSet& BasicPolygonalSet::exclude_vertex(size_t v) {
    require(v < vertex_included_.size(), "bad_polygon", "vertex index out of range");
    vertex_included_[v] = 0;
    return *this;
}

bool BasicPolygonalSet::contains(const Point2& z) const {
    const auto& fs = polygon_.functionals();
    std::vector<size_t> zero;
    for (size_t e = 0; e < fs.size(); ++e) {
        int s = fs[e].eval(z).sign();
        if (s < 0) return false;
        if (s == 0) zero.push_back(e);
    }
    if (zero.empty()) return true;
    if (zero.size() >= 2) {
        // two binding edges meet only at a shared vertex
        const auto& vs = polygon_.data().vertices;
        for (size_t v = 0; v < polygon_.vertex_count(); ++v)
            if (vs[v] == z) return vertex_included_[v] != 0;
        fail("contract_violation", "point binds two edges but is not a vertex");
    }
    // relative interior of one edge
    return edge_included_[zero[0]] != 0;
}

bool is_curtain_certified(const BasicPolygonalSet& s) {
    const ValidatedPolygon& p = s.polygon();
    if (p.is_half_plane()) {
        const auto& f = p.functionals()[0];
        return f.a.is_zero() && f.b.sign() > 0 && f.c.sign() <= 0;
    }
    for (const auto& v : p.data().vertices)
        if (v.y.sign() < 0) return false;
    const Vec2& vin = p.data().dir_in;
    const Vec2& vout = p.data().dir_out;
    if (vin.y.sign() < 0 || vout.y.sign() < 0) return false;
    return vin.x.sign() <= 0 && vout.x.sign() >= 0;
}

NormalizeResult normalize_step2(const ValidatedPolygon& p) {
    require(p.kind() == VPolygon::Kind::polygon, "bad_polygon", "normalization needs a polygon");
    size_t m = p.vertex_count();
    require(m >= 2, "bad_polygon", "normalization needs at least two vertices");
    const auto& vs = p.data().vertices;
    Vec2 e = vs[m - 1] - vs[m - 2];
    Vec2 u = p.data().dir_in + p.data().dir_out;
    Rational d = cross(e, u);
    require(!d.is_zero(), "contract_violation", "normalization frame is singular");
    AffineMap2 frame = AffineMap2::from_columns(e, u, vs[m - 2]);
    AffineMap2 tau = frame.inverse();
    ValidatedPolygon image = p.transformed(tau);

    const auto& w = image.data().vertices;
    require(w[m - 2].is_zero() && w[m - 1] == Point2(Rational(1), Rational(0)), "contract_violation",
            "normalization failed to pin the last edge");
    for (size_t i = 0; i + 1 < m; ++i)
        require(w[i].x < w[i + 1].x, "contract_violation", "vertex abscissas are not increasing");
    for (size_t i = 0; i < m; ++i)
        require(w[i].y.sign() >= 0, "contract_violation", "normalized polygon leaves the upper half-plane");
    require(image.data().dir_in.x.sign() < 0 && image.data().dir_in.y.sign() > 0, "contract_violation",
            "normalized incoming direction is wrong");
    require(image.data().dir_out.x.sign() > 0 && image.data().dir_out.y.sign() > 0, "contract_violation",
            "normalized outgoing direction is wrong");
    require(is_curtain_certified(BasicPolygonalSet::closed(image)), "contract_violation",
            "normalized polygon is not a curtain");
    for (size_t eidx = 1; eidx < m; ++eidx)
        require(!image.travel_dir(eidx).x.is_zero(), "contract_violation",
                "normalized polygon has a vertical bounded edge");
    return {tau, std::move(image)};
}

Point2 compute_apex(const ValidatedPolygon& normalized) {
    size_t m = normalized.vertex_count();
    require(m >= 2, "bad_polygon", "apex needs at least two vertices");
    const auto& vs = normalized.data().vertices;
    const Vec2& w = normalized.data().dir_out;
    require(vs[m - 2].is_zero() && vs[m - 1].y.is_zero() && vs[m - 1].x.sign() > 0, "bad_polygon",
            "apex needs a normalized polygon");
    require(w.x.sign() > 0, "bad_polygon", "outgoing direction must advance in x");
    Rational scale = vs[m - 1].x / w.x;
    return {scale * w.x, scale * w.y};
}

RelocateResult relocate_tau1(const ValidatedPolygon& normalized, const Point2& apex) {
    size_t m = normalized.vertex_count();
    require(m >= 2, "bad_polygon", "relocation needs at least two vertices");
    const auto& vs = normalized.data().vertices;
    const Vec2& v = normalized.data().dir_in;
    const Vec2& w = normalized.data().dir_out;
    require(v.x.sign() < 0, "bad_polygon", "incoming direction must retreat in x");

    Vec2 u{Rational(-1), v.y / (-v.x) + Rational(1)};
    AffineMap2 frame = AffineMap2::from_columns(w, u, vs[m - 1]);
    AffineMap2 tau = frame.inverse();
    ValidatedPolygon image = normalized.transformed(tau);
    Point2 q = tau.apply(apex);

    require(image.data().vertices[m - 1].is_zero(), "contract_violation", "last vertex did not land at the origin");
    require(image.data().dir_out == Vec2(Rational(1), Rational(0)), "contract_violation",
            "outgoing direction did not land on (1,0)");
    require(q.x.sign() > 0 && q.y.sign() > 0, "contract_violation", "apex missed the open first quadrant");
    require(image.data().dir_in.x.sign() < 0 && image.data().dir_in.y.sign() >= 0, "contract_violation",
            "incoming direction left the upper half-plane");
    for (const auto& vert : image.data().vertices)
        require(vert.y.sign() >= 0, "contract_violation", "relocated polygon leaves the upper half-plane");
    return {tau, std::move(image), q};
}

NormalizeResult relocate_tau2(const ValidatedPolygon& p_prime) {
    size_t m = p_prime.vertex_count();
    require(m >= 2, "bad_polygon", "relocation needs at least two vertices");
    const auto& vs = p_prime.data().vertices;
    const Vec2& w = p_prime.data().dir_out;
    Vec2 back = vs[m - 2] - vs[m - 1];
    Rational d = cross(back, w);
    require(!d.is_zero(), "contract_violation", "relocation frame is singular");

    AffineMap2 n_inv = AffineMap2::from_columns(back, w, vs[m - 1]).inverse();
    AffineMap2 mirror; // x -> -x
    mirror.m00 = Rational(-1);
    AffineMap2 tau = compose(mirror, n_inv);
    require(tau.det().sign() > 0, "contract_violation", "relocation must preserve orientation");
    ValidatedPolygon image = p_prime.transformed(tau);

    const auto& ws = image.data().vertices;
    require(ws[m - 1].is_zero() && ws[m - 2] == Point2(Rational(-1), Rational(0)), "contract_violation",
            "relocation failed to pin the last bounded edge");
    require(image.data().dir_out == Vec2(Rational(0), Rational(1)), "contract_violation",
            "outgoing direction did not land on (0,1)");
    for (const auto& vert : ws)
        require(vert.x.sign() <= 0 && vert.y.sign() >= 0, "contract_violation",
                "relocated polygon leaves the second quadrant");
    require(image.data().dir_in.x.sign() <= 0 && image.data().dir_in.y.sign() >= 0, "contract_violation",
            "incoming direction leaves the second quadrant");
    const auto& fs = image.functionals();
    require(fs[m] == LineFunctional{Rational(-1), Rational(0), Rational(0)}, "contract_violation",
            "last edge functional is not -x");
    require(fs[m - 1] == LineFunctional{Rational(0), Rational(1), Rational(0)}, "contract_violation",
            "second-to-last edge functional is not y");
    return {tau, std::move(image)};
}

std::optional<Point2> intersect_lines(const LineFunctional& f, const LineFunctional& g) {
    Rational d = f.a * g.b - f.b * g.a;
    if (d.is_zero()) return std::nullopt;
    return Point2{(f.b * g.c - f.c * g.b) / d, (f.c * g.a - f.a * g.c) / d};
}

} // namespace polyfold
