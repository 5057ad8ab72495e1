#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyfold/error.hpp"
#include "polyfold/pipeline.hpp"
#include "polyfold/plot.hpp"
#include "polyfold/serialization.hpp"
#include "polyfold/verify.hpp"

using namespace polyfold;

namespace {

ValidatedPolygon parse_polygon(const char* text) { return polygon_from_json(text); }

const char* kN3 = R"({
  "kind": "polygon",
  "vertices": [["0", "1"], ["1", "0"]],
  "dir_in": ["-1", "3"],
  "dir_out": ["2", "1"]
})";

const char* kAngle = R"({
  "kind": "polygon",
  "vertices": [["1", "1"]],
  "dir_in": ["-1", "2"],
  "dir_out": ["3", "1"]
})";

const char* kUpper = R"({
  "kind": "half_plane",
  "vertices": [["0", "0"]],
  "dir_in": ["1", "0"],
  "dir_out": ["1", "0"]
})";

}  // namespace

TEST_CASE("polygon json round trip") {
    ValidatedPolygon p = parse_polygon(kN3);
    std::string text = polygon_to_json(p);
    ValidatedPolygon q = polygon_from_json(text);
    CHECK(p.data().vertices == q.data().vertices);
    CHECK(p.data().dir_in == q.data().dir_in);
    CHECK(p.data().dir_out == q.data().dir_out);
    CHECK(polygon_to_json(q) == text);

    ValidatedPolygon hp = parse_polygon(kUpper);
    CHECK(hp.is_half_plane());
    CHECK(polygon_from_json(polygon_to_json(hp)).is_half_plane());
}

TEST_CASE("map json round trip preserves the chain") {
    StagedMap m = build_v_polygon_map(parse_polygon(kN3));
    std::string text = map_to_json(m);
    StagedMap back = map_from_json(text);
    CHECK(back.stages.size() == m.stages.size());
    CHECK(back.domain_arity == m.domain_arity);
    CHECK(back.predicted_degree() == m.predicted_degree());
    CHECK(map_to_json(back) == text);

    for (const auto& pt : {std::pair{Rational(0), Rational(0)},
                           std::pair{Rational::parse("3/7"), Rational(-2)},
                           std::pair{Rational(5), Rational::parse("-11/3")}}) {
        auto a = m.eval({pt.first, pt.second});
        auto b = back.eval({pt.first, pt.second});
        CHECK(a == b);
    }
}

TEST_CASE("interior map json round trip") {
    StagedMap m = build_interior_map(parse_polygon(kN3));
    std::string text = map_to_json(m);
    StagedMap back = map_from_json(text);
    CHECK(back.interior_map);
    CHECK(back.domain_arity == 3);
    auto a = m.eval({Rational(1), Rational(2), Rational(1)});
    auto b = back.eval({Rational(1), Rational(2), Rational(1)});
    CHECK(a == b);
    CHECK(map_to_json(back) == text);
}

TEST_CASE("tampered fold polynomials are rejected") {
    StagedMap m = build_v_polygon_map(parse_polygon(kN3));
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(map_to_json(m));
    bool tampered = false;
    for (auto& stage : j["stages"]) {
        if (stage["kind"] == "fold") {
            stage["h"]["terms"][0][1] = "7/2";
            tampered = true;
            break;
        }
    }
    REQUIRE(tampered);
    std::string code;
    try {
        map_from_json(j.dump());
    } catch (const Error& e) {
        code = e.code();
    }
    CHECK(code == "map_integrity");
}

TEST_CASE("latex rendering") {
    SparsePoly x = SparsePoly::variable(2, 0), y = SparsePoly::variable(2, 1);
    SparsePoly p = x * x - Rational(2) * (x * y) + SparsePoly::constant(2, Rational::parse("1/2"));
    CHECK(poly_to_latex(p) == "x^{2} - 2xy + \\tfrac{1}{2}");
    CHECK(poly_to_latex(SparsePoly::constant(2, Rational(0))) == "0");
    CHECK(map_to_latex({x, y}) == "\\left(x,\\; y\\right)");
}

TEST_CASE("exact containment of the base maps") {
    StagedMap hp = build_halfplane_map(parse_polygon(kUpper));
    SamplePlan plan;
    plan.seed = 4;
    plan.count = 2000;
    plan.scheme = Scheme::heavy;
    ContainmentResult r = check_containment(hp, target_region(hp), plan);
    CHECK(r.ok());
    CHECK(r.samples == 2000);

    StagedMap wedge = build_quadrant_map(parse_polygon(kAngle));
    ContainmentResult r2 = check_containment(wedge, target_region(wedge), plan);
    CHECK(r2.ok());
}

TEST_CASE("expansion agrees with staged evaluation") {
    StagedMap m = build_quadrant_map(parse_polygon(kAngle));
    std::vector<SparsePoly> expanded = expand(m);
    REQUIRE(expanded.size() == 2);
    CHECK(expanded[0].total_degree() == 2);
    SamplePlan plan;
    plan.seed = 8;
    plan.count = 500;
    CrossCheckResult r = cross_check_expansion(m, expanded, plan);
    CHECK(r.ok());

    StagedMap deep = build_v_polygon_map(parse_polygon(kN3));
    std::string code;
    try {
        expand(deep);
    } catch (const Error& e) {
        code = e.code();
    }
    CHECK(code == "degree_cap_exceeded");
}

TEST_CASE("expanded polynomials survive the json round trip") {
    StagedMap m = build_quadrant_map(parse_polygon(kAngle));
    std::vector<SparsePoly> expanded = expand(m);
    std::string text = map_to_json(m, &expanded);
    auto back = expanded_from_json(text);
    REQUIRE(back.has_value());
    CHECK(*back == expanded);
    CHECK(!expanded_from_json(map_to_json(m)).has_value());
}

TEST_CASE("fold certificates of a full chain") {
    StagedMap m = build_v_polygon_map(parse_polygon(kN3));
    auto folds = certify_map_folds(m, 6, 42);
    CHECK(folds.size() == 3);
    for (const auto& f : folds) {
        CHECK(f.ok());
        CHECK(f.fibers == 6);
    }

    auto again = certify_map_folds(m, 6, 42);
    REQUIRE(again.size() == folds.size());
    for (size_t i = 0; i < folds.size(); ++i) {
        CHECK(again[i].path == folds[i].path);
        REQUIRE(again[i].certificates.size() == folds[i].certificates.size());
        for (size_t k = 0; k < folds[i].certificates.size(); ++k)
            CHECK(again[i].certificates[k].r == folds[i].certificates[k].r);
    }
}

TEST_CASE("coverage of the squared upper half-plane") {
    StagedMap m = build_halfplane_map(parse_polygon(kUpper));
    Window w{Rational(-10), Rational(10), Rational(0), Rational(10)};
    SamplePlan plan;
    plan.seed = 12;
    plan.count = 60000;
    plan.scheme = Scheme::heavy;
    CoverageResult cov = check_coverage(m, target_region(m), w, 50, plan);
    CHECK(cov.target_cells == 2500);
    CHECK(cov.fraction() >= 0.95);
}

TEST_CASE("guided coverage reaches unhit cells through witnesses") {
    StagedMap m = build_v_polygon_map(parse_polygon(kN3));
    REQUIRE(m.target.has_value());
    Window w = Window::around(*m.target, Rational(5));
    SamplePlan plan;
    plan.seed = 13;
    plan.count = 20000;
    plan.scheme = Scheme::guided;
    CoverageResult cov = check_coverage(m, target_region(m), w, 40, plan);
    CHECK(cov.fraction() >= 0.9);
    CHECK(cov.walk_attempts > 0);
}

TEST_CASE("backward witnesses land in the requested cell") {
    StagedMap m = build_v_polygon_map(parse_polygon(kN3));
    auto witness = backward_witness(m, 2.37, 3.11);
    REQUIRE(witness.has_value());
    auto im = m.eval_double(*witness);
    CHECK(std::abs(im[0] - 2.37) < 1e-6);
    CHECK(std::abs(im[1] - 3.11) < 1e-6);
}

TEST_CASE("verification reports are deterministic") {
    StagedMap m = build_halfplane_map(parse_polygon(kUpper));
    auto run = [&]() {
        VerifySummary s;
        s.input_path = "upper.json";
        s.seed = 7;
        s.samples = 500;
        s.grid = 20;
        s.threshold = 0.9;
        s.scheme = "heavy";
        s.variant = "lemma";
        s.predicted_degree = m.predicted_degree();
        s.stage_count = m.stages.size();
        s.fold_count = m.fold_count();
        SamplePlan plan;
        plan.seed = 7;
        plan.count = 500;
        plan.scheme = Scheme::heavy;
        s.containment_exact_chain = true;
        s.containment = check_containment(m, target_region(m), plan);
        s.stagewise = check_stagewise(m, plan);
        s.folds = certify_map_folds(m, 4, 7);
        Window w{Rational(-10), Rational(10), Rational(0), Rational(10)};
        s.coverage = check_coverage(m, target_region(m), w, 20, plan);
        s.window = w.str();
        s.pass = true;
        return verify_report_json(s);
    };
    std::string a = run(), b = run();
    CHECK(a == b);
    CHECK(a.find("\"format\": \"verify-report\"") != std::string::npos);
}

TEST_CASE("plots are deterministic and well formed") {
    StagedMap m = build_halfplane_map(parse_polygon(kUpper));
    SamplePlan plan;
    plan.seed = 3;
    plan.count = 200;
    Window w{Rational(-10), Rational(10), Rational(0), Rational(10)};
    std::string csv = plot_csv(m, plan, w);
    CHECK(csv == plot_csv(m, plan, w));
    CHECK(csv.rfind("x,y\n", 0) == 0);
    // every image row should have a nonnegative second coordinate
    size_t pos = 4;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        size_t nl = csv.find('\n', comma);
        double y = std::stod(csv.substr(comma + 1, nl - comma - 1));
        CHECK(y >= -1e-9);
        pos = nl + 1;
    }

    std::string svg = plot_svg(m, plan, w);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
}
