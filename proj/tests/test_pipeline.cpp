#include "doctest.h"

#include <vector>

#include "polyfold/error.hpp"
#include "polyfold/pipeline.hpp"
#include "polyfold/sampling.hpp"
#include "polyfold/verify.hpp"

using namespace polyfold;

namespace {

ValidatedPolygon make_polygon(std::vector<Point2> vertices, Vec2 din, Vec2 dout) {
    VPolygon raw;
    raw.vertices = std::move(vertices);
    raw.dir_in = din;
    raw.dir_out = dout;
    return ValidatedPolygon::validate(raw);
}

ValidatedPolygon catalog_n3() {
    return make_polygon({{Rational(0), Rational(1)}, {Rational(1), Rational(0)}},
                        {Rational(-1), Rational(3)}, {Rational(2), Rational(1)});
}

ValidatedPolygon catalog_n4() {
    return make_polygon({{Rational(-2), Rational(3)}, {Rational(0), Rational(1)},
                         {Rational(2), Rational(0)}},
                        {Rational(-2), Rational(5)}, {Rational(3), Rational(1)});
}

ValidatedPolygon catalog_n5() {
    return make_polygon({{Rational(-4), Rational(6)}, {Rational(-2), Rational(2)},
                         {Rational(0), Rational(0)}, {Rational(3), Rational(-1)}},
                        {Rational(-1), Rational(4)}, {Rational(2), Rational(1)});
}

}  // namespace

TEST_CASE("half-plane map squares the second coordinate") {
    VPolygon hp;
    hp.kind = VPolygon::Kind::half_plane;
    hp.vertices = {{Rational(0), Rational(0)}};
    hp.dir_in = {Rational(1), Rational(0)};
    hp.dir_out = hp.dir_in;
    StagedMap m = build_halfplane_map(ValidatedPolygon::validate(hp));
    CHECK(m.stages.size() == 1);
    CHECK(m.predicted_degree() == 2);
    auto im = m.eval({Rational(3), Rational(-2)});
    CHECK(im[0] == Rational(3));
    CHECK(im[1] == Rational(4));
}

TEST_CASE("tilted half-plane map lands on its target") {
    VPolygon hp;
    hp.kind = VPolygon::Kind::half_plane;
    hp.vertices = {{Rational(0), Rational(0)}};
    hp.dir_in = {Rational(1), Rational(1)}; // left side: y >= x
    hp.dir_out = hp.dir_in;
    ValidatedPolygon p = ValidatedPolygon::validate(hp);
    StagedMap m = build_halfplane_map(p);
    auto im = m.eval({Rational(0), Rational(1)});
    CHECK(im[0] == Rational(-1));
    CHECK(im[1] == Rational(1));
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        auto z = m.eval({sample_rational(rng, 50), sample_rational(rng, 50)});
        CHECK(p.contains({z[0], z[1]}));
    }
}

TEST_CASE("corner map squares both coordinates") {
    StagedMap m = build_quadrant_map(make_polygon({{Rational(0), Rational(0)}},
                                                  {Rational(0), Rational(1)},
                                                  {Rational(1), Rational(0)}));
    CHECK(m.stages.size() == 1);
    CHECK(m.predicted_degree() == 2);
    auto im = m.eval({Rational(2), Rational(3)});
    CHECK(im[0] == Rational(4));
    CHECK(im[1] == Rational(9));
}

TEST_CASE("angle map carries the corner onto the target wedge") {
    ValidatedPolygon p = make_polygon({{Rational(1), Rational(1)}},
                                      {Rational(-1), Rational(2)}, {Rational(3), Rational(1)});
    StagedMap m = build_quadrant_map(p);
    CHECK(m.predicted_degree() == 2);
    auto im = m.eval({Rational(1), Rational(2)});
    CHECK(im[0] == Rational(0));
    CHECK(im[1] == Rational(10));
    CHECK(p.contains({im[0], im[1]}));
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        auto z = m.eval({sample_rational(rng, 50), sample_rational(rng, 50)});
        CHECK(p.contains({z[0], z[1]}));
    }
}

TEST_CASE("stage counts follow the edge count") {
    StagedMap m3 = build_v_polygon_map(catalog_n3());
    CHECK(m3.stages.size() == 9);
    CHECK(m3.fold_count() == 3);
    CHECK(m3.predicted_degree() == 1134);

    StagedMap m4 = build_v_polygon_map(catalog_n4());
    CHECK(m4.stages.size() == 16);
    CHECK(m4.fold_count() == 6);

    StagedMap m5 = build_v_polygon_map(catalog_n5());
    CHECK(m5.stages.size() == 23);
    CHECK(m5.fold_count() == 9);
}

TEST_CASE("three-edge chain maps into its polygon") {
    ValidatedPolygon p = catalog_n3();
    StagedMap m = build_v_polygon_map(p);
    REQUIRE(m.target.has_value());
    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
        auto z = m.eval({sample_rational(rng, 20), sample_rational(rng, 20)});
        CHECK(p.contains({z[0], z[1]}));
    }
    auto origin_image = m.eval({Rational(0), Rational(0)});
    CHECK(p.contains({origin_image[0], origin_image[1]}));
}

TEST_CASE("every declared stage image holds up") {
    StagedMap m = build_v_polygon_map(catalog_n3());
    SamplePlan plan;
    plan.seed = 21;
    plan.count = 250;
    plan.denominator_bound = 60;
    StagewiseResult r = check_stagewise(m, plan);
    CHECK(r.ok());
    CHECK(r.stages_checked > 0);
    if (!r.ok()) MESSAGE(r.first_failure);
}

TEST_CASE("interior map of the corner") {
    ValidatedPolygon q = make_polygon({{Rational(0), Rational(0)}},
                                      {Rational(0), Rational(1)}, {Rational(1), Rational(0)});
    StagedMap m = build_interior_map(q);
    CHECK(m.domain_arity == 3);
    CHECK(m.interior_map);
    CHECK(m.predicted_degree() == 8);

    auto im = m.eval({Rational(0), Rational(0), Rational(5)});
    CHECK(im.size() == 2);
    CHECK(im[0] == Rational(1));
    CHECK(im[1] == Rational(26));

    Region inner = strict_interior(q);
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        Rational t = sample_rational(rng, 30).abs() + Rational(1, 7);
        auto z = m.eval({sample_rational(rng, 30), sample_rational(rng, 30), t});
        CHECK(inner.contains({z[0], z[1]}));
        CHECK(z[0].sign() > 0);
        CHECK(z[1].sign() > 0);
    }
}

TEST_CASE("interior map rejects half-planes") {
    VPolygon hp;
    hp.kind = VPolygon::Kind::half_plane;
    hp.vertices = {{Rational(0), Rational(0)}};
    hp.dir_in = {Rational(1), Rational(0)};
    hp.dir_out = hp.dir_in;
    CHECK_THROWS_AS(build_interior_map(ValidatedPolygon::validate(hp)), Error);
}

TEST_CASE("interior map of a three-edge polygon stays strictly inside") {
    ValidatedPolygon p = catalog_n3();
    StagedMap m = build_interior_map(p);
    CHECK(m.domain_arity == 3);
    CHECK(m.fold_count() == 3);
    Region inner = strict_interior(p);
    Rng rng(27);
    for (int i = 0; i < 25; ++i) {
        Rational t = sample_rational(rng, 10).abs() + Rational(1, 5);
        auto z = m.eval({sample_rational(rng, 10), sample_rational(rng, 10), t});
        CHECK(inner.contains({z[0], z[1]}));
    }
}

TEST_CASE("open upper half-plane factor") {
    auto [g1, g2] = open_halfplane_factor();
    CHECK(g1.eval({Rational(0), Rational(5)}) == Rational(-5));
    CHECK(g2.eval({Rational(0), Rational(5)}) == Rational(1));
    Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        Rational x = sample_rational_heavy(rng, 100), y = sample_rational_heavy(rng, 100);
        CHECK(g2.eval({x, y}).sign() > 0);
    }
}

TEST_CASE("dropping the last vertex keeps the outgoing direction") {
    ValidatedPolygon p = catalog_n4();
    StagedMap m = build_v_polygon_map(p);
    // the deepest inner chain is the angle map of the twice-deleted polygon;
    // the final stage list starts with its base stage
    CHECK(std::holds_alternative<BaseStage>(m.stages.front()));
    CHECK(std::get<BaseStage>(m.stages.front()).kind == BaseKind::xy_square);
}
