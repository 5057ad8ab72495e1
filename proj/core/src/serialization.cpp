#include "polyfold/serialization.hpp"

#include <cstdio>

#include "json.hpp"
#include "polyfold/error.hpp"

namespace polyfold {

namespace {

using json = nlohmann::ordered_json;

json rat_json(const Rational& r) { return r.str(); }

Rational rat_parse(const json& j) {
    require(j.is_string(), "bad_json", "expected a rational string");
    return Rational::parse(j.get<std::string>());
}

json ext_json(const ExtRational& e) { return e.str(); }

ExtRational ext_parse(const json& j) {
    require(j.is_string(), "bad_json", "expected an extended rational string");
    return ExtRational::parse(j.get<std::string>());
}

json point_json(const Point2& p) { return json::array({rat_json(p.x), rat_json(p.y)}); }

Point2 point_parse(const json& j) {
    require(j.is_array() && j.size() == 2, "bad_json", "expected a coordinate pair");
    return Point2{rat_parse(j[0]), rat_parse(j[1])};
}

json poly_json(const SparsePoly& p) {
    json terms = json::array();
    const auto& m = p.terms();
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
        json e = json::array();
        for (int k = 0; k < p.arity(); ++k) e.push_back(it->first[static_cast<size_t>(k)]);
        terms.push_back(json::array({e, rat_json(it->second)}));
    }
    return json{{"arity", p.arity()}, {"terms", terms}};
}

SparsePoly poly_parse(const json& j) {
    require(j.is_object() && j.contains("arity") && j.contains("terms"), "bad_json",
            "expected a polynomial object");
    int arity = j.at("arity").get<int>();
    require(arity >= 1 && arity <= 3, "bad_json", "polynomial arity out of range");
    SparsePoly p(arity);
    for (const auto& t : j.at("terms")) {
        require(t.is_array() && t.size() == 2, "bad_json", "malformed polynomial term");
        const json& ej = t[0];
        require(ej.is_array() && ej.size() == static_cast<size_t>(arity), "bad_json",
                "term exponent arity mismatch");
        Exps e{0, 0, 0};
        for (int k = 0; k < arity; ++k) e[static_cast<size_t>(k)] = ej[static_cast<size_t>(k)].get<uint32_t>();
        p.set_coeff(e, rat_parse(t[1]));
    }
    return p;
}

json functional_json(const LineFunctional& f) {
    return json{{"a", rat_json(f.a)}, {"b", rat_json(f.b)}, {"c", rat_json(f.c)}};
}

LineFunctional functional_parse(const json& j) {
    return LineFunctional{rat_parse(j.at("a")), rat_parse(j.at("b")), rat_parse(j.at("c"))};
}

json region_json(const Region& r) {
    json pieces = json::array();
    for (const ConvexPiece& piece : r.pieces) {
        json cons = json::array();
        for (const auto& hc : piece.constraints) {
            json c = functional_json(hc.f);
            c["strict"] = hc.strict;
            cons.push_back(std::move(c));
        }
        json excluded = json::array(), pts = json::array(), dirs = json::array();
        for (const Point2& p : piece.excluded_points) excluded.push_back(point_json(p));
        for (const Point2& p : piece.span_points) pts.push_back(point_json(p));
        for (const Vec2& d : piece.span_dirs) dirs.push_back(point_json(d));
        pieces.push_back(json{{"constraints", std::move(cons)},
                              {"excluded_points", std::move(excluded)},
                              {"span_points", std::move(pts)},
                              {"span_dirs", std::move(dirs)}});
    }
    return json{{"pieces", std::move(pieces)}};
}

Region region_parse(const json& j) {
    Region r;
    for (const auto& pj : j.at("pieces")) {
        ConvexPiece piece;
        for (const auto& cj : pj.at("constraints"))
            piece.constraints.push_back({functional_parse(cj), cj.at("strict").get<bool>()});
        for (const auto& e : pj.at("excluded_points")) piece.excluded_points.push_back(point_parse(e));
        for (const auto& e : pj.at("span_points")) piece.span_points.push_back(point_parse(e));
        for (const auto& e : pj.at("span_dirs")) piece.span_dirs.push_back(point_parse(e));
        r.pieces.push_back(std::move(piece));
    }
    return r;
}

json polygon_json_obj(const ValidatedPolygon& p) {
    json verts = json::array();
    for (const Point2& v : p.data().vertices) verts.push_back(point_json(v));
    json out;
    out["kind"] = p.is_half_plane() ? "half_plane" : "polygon";
    out["vertices"] = std::move(verts);
    out["dir_in"] = point_json(p.data().dir_in);
    out["dir_out"] = point_json(p.data().dir_out);
    return out;
}

ValidatedPolygon polygon_parse_obj(const json& j) {
    require(j.is_object() && j.contains("vertices") && j.contains("dir_in") && j.contains("dir_out"),
            "bad_json", "polygon object needs vertices, dir_in, dir_out");
    VPolygon raw;
    if (j.contains("kind")) {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "half_plane")
            raw.kind = VPolygon::Kind::half_plane;
        else
            require(kind == "polygon", "bad_json", "unknown polygon kind: " + kind);
    }
    for (const auto& v : j.at("vertices")) raw.vertices.push_back(point_parse(v));
    raw.dir_in = point_parse(j.at("dir_in"));
    raw.dir_out = point_parse(j.at("dir_out"));
    return ValidatedPolygon::validate(raw);
}

json set_json(const BasicPolygonalSet& s) {
    json excluded_edges = json::array(), excluded_vertices = json::array();
    for (size_t e = 0; e < s.edge_included().size(); ++e)
        if (!s.edge_included()[e]) excluded_edges.push_back(e);
    for (size_t v = 0; v < s.vertex_included().size(); ++v)
        if (!s.vertex_included()[v]) excluded_vertices.push_back(v);
    return json{{"polygon", polygon_json_obj(s.polygon())},
                {"excluded_edges", std::move(excluded_edges)},
                {"excluded_vertices", std::move(excluded_vertices)}};
}

BasicPolygonalSet set_parse(const json& j) {
    BasicPolygonalSet s = BasicPolygonalSet::closed(polygon_parse_obj(j.at("polygon")));
    for (const auto& e : j.at("excluded_edges")) s.exclude_edge(e.get<size_t>());
    for (const auto& v : j.at("excluded_vertices")) s.exclude_vertex(v.get<size_t>());
    return s;
}

const char* variant_name(SignVariant v) {
    return v == SignVariant::lemma ? "lemma" : "paper_step4";
}

SignVariant variant_parse(const std::string& name) {
    if (name == "lemma") return SignVariant::lemma;
    if (name == "paper_step4") return SignVariant::paper_step4;
    fail("bad_json", "unknown sign variant: " + name);
}

json map_json_obj(const StagedMap& m);

json stage_json(const Stage& s) {
    if (const auto* b = std::get_if<BaseStage>(&s))
        return json{{"kind", "base"}, {"map", base_kind_name(b->kind)}};
    if (const auto* a = std::get_if<AffineStage>(&s)) {
        const AffineMap2& t = a->map;
        return json{{"kind", "affine"},
                    {"matrix", json::array({json::array({rat_json(t.m00), rat_json(t.m01)}),
                                            json::array({rat_json(t.m10), rat_json(t.m11)})})},
                    {"translate", point_json(t.t)}};
    }
    if (const auto* f = std::get_if<FoldStage>(&s)) {
        require(f->data.source.has_value(), "bad_stage", "fold stage lost its input set");
        return json{{"kind", "fold"},
                    {"c", ext_json(f->data.spec.c)},
                    {"d", ext_json(f->data.spec.d)},
                    {"variant", variant_name(f->data.spec.variant)},
                    {"input", set_json(*f->data.source)},
                    {"h", poly_json(f->data.spec.h)}};
    }
    const auto& l = std::get<LiftStage>(s);
    return json{{"kind", "lift"}, {"inner", map_json_obj(*l.inner)}};
}

Stage stage_parse(const json& j);

json map_json_obj(const StagedMap& m) {
    json stages = json::array();
    for (const Stage& s : m.stages) stages.push_back(stage_json(s));
    json expected = json::array();
    for (const auto& r : m.expected_after)
        expected.push_back(r.has_value() ? region_json(*r) : json(nullptr));
    json out;
    out["format"] = "staged-map";
    out["version"] = 1;
    out["domain_arity"] = m.domain_arity;
    out["interior_map"] = m.interior_map;
    out["variant"] = variant_name(m.variant);
    out["target"] = m.target.has_value() ? polygon_json_obj(*m.target) : json(nullptr);
    out["stages"] = std::move(stages);
    out["expected_after"] = std::move(expected);
    return out;
}

StagedMap map_parse_obj(const json& j);

Stage stage_parse(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "base") return BaseStage{base_kind_from_name(j.at("map").get<std::string>())};
    if (kind == "affine") {
        const json& mtx = j.at("matrix");
        AffineMap2 a;
        a.m00 = rat_parse(mtx[0][0]);
        a.m01 = rat_parse(mtx[0][1]);
        a.m10 = rat_parse(mtx[1][0]);
        a.m11 = rat_parse(mtx[1][1]);
        a.t = point_parse(j.at("translate"));
        return AffineStage{a};
    }
    if (kind == "fold") {
        BasicPolygonalSet input = set_parse(j.at("input"));
        FoldData data = build_fold_stage(input, ext_parse(j.at("c")), ext_parse(j.at("d")),
                                         variant_parse(j.at("variant").get<std::string>()));
        SparsePoly stored_h = poly_parse(j.at("h"));
        require(stored_h == data.spec.h, "map_integrity",
                "stored fold polynomial disagrees with the one rebuilt from the fold's input");
        return FoldStage{std::move(data)};
    }
    if (kind == "lift")
        return LiftStage{std::make_shared<StagedMap>(map_parse_obj(j.at("inner")))};
    fail("bad_json", "unknown stage kind: " + kind);
}

StagedMap map_parse_obj(const json& j) {
    require(j.is_object(), "bad_json", "expected a map object");
    require(j.value("format", "") == std::string("staged-map"), "bad_json",
            "not a staged-map file");
    require(j.value("version", 0) == 1, "bad_json", "unsupported staged-map version");
    StagedMap m;
    m.domain_arity = j.at("domain_arity").get<int>();
    m.interior_map = j.at("interior_map").get<bool>();
    m.variant = variant_parse(j.at("variant").get<std::string>());
    if (!j.at("target").is_null()) m.target = polygon_parse_obj(j.at("target"));
    for (const auto& sj : j.at("stages")) m.stages.push_back(stage_parse(sj));
    for (const auto& rj : j.at("expected_after"))
        m.expected_after.push_back(rj.is_null() ? std::optional<Region>()
                                                : std::optional<Region>(region_parse(rj)));
    validate_map(m);
    return m;
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    require(!j.is_discarded(), "bad_json", "malformed JSON");
    return j;
}

}  // namespace

std::string polygon_to_json(const ValidatedPolygon& p) { return polygon_json_obj(p).dump(2) + "\n"; }

ValidatedPolygon polygon_from_json(const std::string& text) {
    return polygon_parse_obj(parse_text(text));
}

std::string map_to_json(const StagedMap& m, const std::vector<SparsePoly>* expanded) {
    json out = map_json_obj(m);
    if (expanded) {
        json ex = json::array();
        for (const SparsePoly& p : *expanded) ex.push_back(poly_json(p));
        out["expanded"] = std::move(ex);
        json lat = json::array();
        for (const SparsePoly& p : *expanded) lat.push_back(poly_to_latex(p));
        out["expanded_latex"] = std::move(lat);
    }
    return out.dump(2) + "\n";
}

StagedMap map_from_json(const std::string& text) { return map_parse_obj(parse_text(text)); }

std::optional<std::vector<SparsePoly>> expanded_from_json(const std::string& text) {
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("expanded") || j.at("expanded").is_null()) return std::nullopt;
    std::vector<SparsePoly> out;
    for (const auto& pj : j.at("expanded")) out.push_back(poly_parse(pj));
    return out;
}

std::string poly_to_latex(const SparsePoly& p) {
    if (p.is_zero()) return "0";
    static const char* names2[] = {"x", "y"};
    static const char* names3[] = {"x", "y", "t"};
    static const char* names1[] = {"t"};
    const char** names = p.arity() == 1 ? names1 : (p.arity() == 2 ? names2 : names3);

    std::string out;
    const auto& terms = p.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const Rational& q = it->second;
        bool neg = q.sign() < 0;
        Rational mag = neg ? -q : q;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        bool has_vars = exps_total(it->first) > 0;
        std::string mag_str;
        if (mag.is_integer())
            mag_str = mag.str();
        else
            mag_str = "\\tfrac{" + mag.numerator().str() + "}{" + mag.denominator().str() + "}";
        if (!has_vars || mag_str != "1") out += mag_str;
        for (int k = 0; k < p.arity(); ++k) {
            uint32_t e = it->first[static_cast<size_t>(k)];
            if (e == 0) continue;
            out += names[k];
            if (e > 1) out += "^{" + std::to_string(e) + "}";
        }
    }
    return out;
}

std::string map_to_latex(const std::vector<SparsePoly>& coords) {
    std::string out = "\\left(";
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) out += ",\\; ";
        out += poly_to_latex(coords[i]);
    }
    return out + "\\right)";
}

namespace {

json containment_json(const ContainmentResult& r) {
    return json{{"samples", r.samples},
                {"failures", r.failures},
                {"first_failure", r.first_failure}};
}

json cert_json(const FiberCertificate& c) {
    json checks = json::array();
    for (const CheckItem& item : c.checks)
        checks.push_back(json{{"name", item.name}, {"ok", item.ok}, {"note", item.note}});
    json out;
    out["r"] = rat_json(c.r);
    out["tag"] = c.tag;
    out["origin"] = rat_json(c.origin);
    out["origin_closed"] = c.origin_closed;
    out["checks"] = std::move(checks);
    out["bracket"] = c.bracket.has_value()
                         ? json::array({rat_json(c.bracket->first), rat_json(c.bracket->second)})
                         : json(nullptr);
    out["exact_root"] = c.exact_root.has_value() ? json(rat_json(*c.exact_root)) : json(nullptr);
    out["valid"] = c.valid;
    return out;
}

json coverage_json(const CoverageResult& c) {
    return json{{"window", c.window.str()},
                {"grid", c.grid},
                {"target_cells", c.target_cells},
                {"hit_cells", c.hit_cells},
                {"fraction", c.fraction()},
                {"near_boundary_misses", c.near_boundary_misses},
                {"forward_samples", c.forward_samples},
                {"walk_attempts", c.walk_attempts},
                {"walk_hits", c.walk_hits}};
}

}  // namespace

std::string verify_report_json(const VerifySummary& s) {
    json folds = json::array();
    for (const FoldCertSummary& f : s.folds) {
        json certs = json::array();
        for (const FiberCertificate& c : f.certificates) certs.push_back(cert_json(c));
        folds.push_back(json{{"path", f.path},
                             {"fibers", f.fibers},
                             {"valid", f.valid},
                             {"certificates", std::move(certs)}});
    }
    json out;
    out["format"] = "verify-report";
    out["version"] = 1;
    out["config"] = json{{"input", s.input_path},   {"seed", s.seed},
                         {"samples", s.samples},    {"grid", s.grid},
                         {"window", s.window},      {"threshold", s.threshold},
                         {"scheme", s.scheme}};
    out["map"] = json{{"stages", s.stage_count},
                      {"folds", s.fold_count},
                      {"predicted_degree", s.predicted_degree},
                      {"variant", s.variant}};
    out["containment"] = json(nullptr);
    if (s.containment.has_value()) {
        out["containment"] = containment_json(*s.containment);
        out["containment"]["mode"] = s.containment_exact_chain ? "exact-chain" : "per-stage-only";
    }
    out["stagewise"] = json{{"stages_checked", s.stagewise.stages_checked},
                            {"samples", s.stagewise.samples},
                            {"failures", s.stagewise.failures},
                            {"first_failure", s.stagewise.first_failure}};
    out["fold_certificates"] = std::move(folds);
    out["coverage"] = s.coverage.has_value() ? coverage_json(*s.coverage) : json(nullptr);
    out["cross_check"] = json(nullptr);
    if (s.cross_check.has_value())
        out["cross_check"] = json{{"samples", s.cross_check->samples},
                                  {"mismatches", s.cross_check->mismatches},
                                  {"first_mismatch", s.cross_check->first_mismatch}};
    out["pass"] = s.pass;
    return out.dump(2) + "\n";
}

std::string misses_csv(const CoverageResult& cov) {
    std::string out = "x,y\n";
    char buf[64];
    for (const auto& [x, y] : cov.miss_centers) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f\n", x, y);
        out += buf;
    }
    return out;
}

}  // namespace polyfold
