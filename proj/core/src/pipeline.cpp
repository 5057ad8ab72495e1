#include "polyfold/pipeline.hpp"

#include <memory>
#include <utility>

#include "polyfold/error.hpp"

namespace polyfold {

namespace {

ValidatedPolygon standard_halfplane() {
    VPolygon raw;
    raw.kind = VPolygon::Kind::half_plane;
    raw.vertices = {Point2{Rational(0), Rational(0)}};
    raw.dir_in = Vec2{Rational(1), Rational(0)};
    raw.dir_out = raw.dir_in;
    return ValidatedPolygon::validate(raw);
}

ValidatedPolygon standard_quadrant() {
    VPolygon raw;
    raw.vertices = {Point2{Rational(0), Rational(0)}};
    raw.dir_in = Vec2{Rational(0), Rational(1)};
    raw.dir_out = Vec2{Rational(1), Rational(0)};
    return ValidatedPolygon::validate(raw);
}

void push_affine(StagedMap& out, const AffineMap2& map, Region expected) {
    if (map.is_identity()) return;
    out.stages.push_back(AffineStage{map});
    out.expected_after.push_back(std::move(expected));
}

}  // namespace

StagedMap build_halfplane_map(const ValidatedPolygon& p) {
    require(p.is_half_plane(), "bad_polygon", "half-plane builder needs a half-plane");

    StagedMap out;
    out.domain_arity = 2;
    ValidatedPolygon std_hp = standard_halfplane();
    out.stages.push_back(BaseStage{BaseKind::y_square});
    out.expected_after.push_back(region_of(BasicPolygonalSet::closed(std_hp)));

    const Vec2& d = p.data().dir_in;
    Vec2 n{-d.y, d.x};
    AffineMap2 carry = AffineMap2::from_columns(d, n, p.data().vertices[0]);
    push_affine(out, carry, region_of(BasicPolygonalSet::closed(p)));

    out.target = p;
    validate_map(out);
    return out;
}

StagedMap build_quadrant_map(const ValidatedPolygon& p) {
    require(!p.is_half_plane() && p.vertex_count() == 1, "bad_polygon",
            "quadrant builder needs a one-vertex polygon");

    StagedMap out;
    out.domain_arity = 2;
    out.stages.push_back(BaseStage{BaseKind::xy_square});
    out.expected_after.push_back(region_of(BasicPolygonalSet::closed(standard_quadrant())));

    // Columns (dir_out, dir_in) keep the determinant positive: the cone over
    // (e1, e2) lands on the cone over (w, v) at the vertex.
    AffineMap2 carry = AffineMap2::from_columns(p.data().dir_out, p.data().dir_in,
                                                p.data().vertices[0]);
    require(carry.det().sign() > 0, "contract_violation", "angle carry map must preserve orientation");
    push_affine(out, carry, region_of(BasicPolygonalSet::closed(p)));

    out.target = p;
    validate_map(out);
    return out;
}

StagedMap build_v_polygon_map(const ValidatedPolygon& p, SignVariant variant) {
    if (p.is_half_plane()) return build_halfplane_map(p);
    if (p.vertex_count() == 1) return build_quadrant_map(p);

    size_t m = p.vertex_count();

    NormalizeResult norm = normalize_step2(p);
    const ValidatedPolygon& ph = norm.image;
    const auto& vh = ph.data().vertices;
    require(vh[m - 2].is_zero() && vh[m - 1] == Point2{Rational(1), Rational(0)},
            "contract_violation", "normalization must pin the last bounded edge to [0,1] x {0}");

    // Drop the last vertex; the outgoing direction stays, so the smaller
    // polygon sits inside the normalized one.
    VPolygon del;
    del.vertices.assign(vh.begin(), vh.end() - 1);
    del.dir_in = ph.data().dir_in;
    del.dir_out = ph.data().dir_out;
    ValidatedPolygon p1 = ValidatedPolygon::validate(del);

    StagedMap out = build_v_polygon_map(p1, variant);

    // Fold the dropped wedge's vertical strip up from the smaller polygon.
    FoldData f1 = build_fold_stage(BasicPolygonalSet::closed(p1), ExtRational(vh[m - 2].x),
                                   ExtRational(vh[m - 1].x), SignVariant::lemma);
    Region after_f1 = f1.declared_image;
    out.stages.push_back(FoldStage{std::move(f1)});
    out.expected_after.push_back(after_f1);

    // Move the last vertex to the origin with the outgoing edge along y = 0;
    // the wedge apex lands in the open first quadrant.
    Point2 apex = compute_apex(ph);
    RelocateResult r1 = relocate_tau1(ph, apex);
    out.stages.push_back(AffineStage{r1.map});
    out.expected_after.push_back(transformed(after_f1, r1.map));
    const ValidatedPolygon& pp = r1.image;

    // Swing the filled strip around the origin: everything except the origin
    // itself is recovered.
    VPolygon aux;
    aux.vertices = pp.data().vertices;
    aux.dir_in = pp.data().dir_in;
    aux.dir_out = r1.apex_image;
    ValidatedPolygon p2 = ValidatedPolygon::validate(aux);
    BasicPolygonalSet s2 = BasicPolygonalSet::closed(p2);
    s2.exclude_edge(m).exclude_vertex(m - 1);
    FoldData f2 = build_fold_stage(s2, ExtRational(0), ExtRational::pos_inf(), variant);
    out.stages.push_back(FoldStage{std::move(f2)});
    Region after_f2 = region_of(BasicPolygonalSet::closed(pp).exclude_vertex(m - 1));
    out.expected_after.push_back(after_f2);

    // Park the polygon in the second quadrant with the missing vertex at the
    // origin and the outgoing edge on x = 0.
    NormalizeResult r2 = relocate_tau2(pp);
    out.stages.push_back(AffineStage{r2.map});
    out.expected_after.push_back(transformed(after_f2, r2.map));
    const ValidatedPolygon& ppp = r2.image;

    // Fold once more over ]-1, +inf[; the half-open strip this fills
    // contains the origin, so the image closes up.
    BasicPolygonalSet s3 = BasicPolygonalSet::closed(ppp);
    s3.exclude_vertex(m - 1);
    FoldData f3 = build_fold_stage(s3, ExtRational(ppp.data().vertices[m - 2].x),
                                   ExtRational::pos_inf(), SignVariant::lemma);
    out.stages.push_back(FoldStage{std::move(f3)});
    out.expected_after.push_back(region_of(BasicPolygonalSet::closed(ppp)));

    out.stages.push_back(AffineStage{r2.map.inverse()});
    out.expected_after.push_back(region_of(BasicPolygonalSet::closed(pp)));

    AffineMap2 back = compose(norm.map.inverse(), r1.map.inverse());
    push_affine(out, back, region_of(BasicPolygonalSet::closed(p)));

    out.target = p;
    out.variant = variant;
    validate_map(out);
    return out;
}

StagedMap build_interior_map(const ValidatedPolygon& p, SignVariant variant) {
    require(!p.is_half_plane(), "bad_polygon",
            "interior builder needs a polygon with at least one vertex");

    // Position the unbounded edge lines onto the coordinate axes, interior
    // inside the open first quadrant.
    const auto& fs = p.functionals();
    std::optional<Point2> corner = intersect_lines(fs.front(), fs.back());
    require(corner.has_value(), "contract_violation", "unbounded edge lines must meet");
    AffineMap2 cone = AffineMap2::from_columns(p.data().dir_out, p.data().dir_in, *corner);
    require(cone.det().sign() > 0, "contract_violation", "cone basis must preserve orientation");
    AffineMap2 sigma = cone.inverse();
    ValidatedPolygon positioned = p.transformed(sigma);

    for (const Point2& v : positioned.data().vertices)
        require(v.x.sign() >= 0 && v.y.sign() >= 0, "contract_violation",
                "positioned polygon must sit in the first quadrant");
    for (const LineFunctional& f : positioned.functionals())
        require((f.a + f.b).sign() > 0, "contract_violation",
                "every positioned edge must see the (1,1) direction inward");

    auto inner = std::make_shared<StagedMap>(build_v_polygon_map(positioned, variant));

    StagedMap out;
    out.domain_arity = 3;
    out.interior_map = true;
    out.variant = variant;
    out.stages.push_back(BaseStage{BaseKind::open_upper_factor3});
    out.expected_after.emplace_back(std::nullopt);
    out.stages.push_back(LiftStage{inner});
    out.expected_after.push_back(strict_interior(positioned));
    push_affine(out, cone, strict_interior(p));

    out.target = p;
    validate_map(out);
    return out;
}

}  // namespace polyfold
