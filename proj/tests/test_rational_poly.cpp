#include "doctest.h"

#include "polyfold/error.hpp"
#include "polyfold/poly.hpp"
#include "polyfold/rational.hpp"
#include "polyfold/roots.hpp"
#include "polyfold/sampling.hpp"

using namespace polyfold;

TEST_CASE("rational parsing and printing") {
    CHECK(Rational::parse("3/4").str() == "3/4");
    CHECK(Rational::parse("-7/2") == Rational(-7) / Rational(2));
    CHECK(Rational::parse("0.25") == Rational(1) / Rational(4));
    CHECK(Rational::parse("-1.5") == Rational(-3) / Rational(2));
    CHECK(Rational::parse("6/4").str() == "3/2");
    CHECK(Rational::parse("42").is_integer());
    CHECK_THROWS_AS(Rational::parse("1/0"), Error);
    CHECK_THROWS_AS(Rational::parse("x"), Error);
}

TEST_CASE("rational arithmetic basics") {
    Rational a = Rational::parse("2/3"), b = Rational::parse("-1/6");
    CHECK(a + b == Rational::parse("1/2"));
    CHECK(a * b == Rational::parse("-1/9"));
    CHECK((a / b).str() == "-4");
    CHECK(a.floor() == Rational(0));
    CHECK(Rational::parse("-5/2").floor() == Rational(-3));
    CHECK(b.sign() == -1);
    CHECK(b.abs() == Rational::parse("1/6"));
    CHECK(Rational::from_double(0.5) == Rational::parse("1/2"));
}

TEST_CASE("extended rationals order correctly") {
    ExtRational lo = ExtRational::neg_inf(), hi = ExtRational::pos_inf();
    ExtRational two{Rational(2)};
    CHECK(lo < two);
    CHECK(two < hi);
    CHECK(lo < hi);
    CHECK(ExtRational::parse("-inf").is_neg_inf());
    CHECK(ExtRational::parse("inf").is_pos_inf());
    CHECK(ExtRational::parse("3/2").value() == Rational::parse("3/2"));
    CHECK(strictly_between(lo, Rational(-100), two));
    CHECK(!strictly_between(two, Rational(2), hi));
}

TEST_CASE("sparse polynomial ring identities") {
    SparsePoly x = SparsePoly::variable(2, 0), y = SparsePoly::variable(2, 1);
    SparsePoly s = x + y;
    SparsePoly sq = s * s;
    CHECK(sq == x * x + Rational(2) * (x * y) + y * y);
    CHECK(sq.total_degree() == 2);
    CHECK(sq.term_count() == 3);
    CHECK(s.pow(3) == sq * s);
    CHECK((s - s).is_zero());
    CHECK(SparsePoly::constant(2, Rational(0)).is_zero());
}

TEST_CASE("polynomial evaluation matches structure") {
    SparsePoly x = SparsePoly::variable(2, 0), y = SparsePoly::variable(2, 1);
    SparsePoly p = x * x * y - Rational(3) * y + SparsePoly::constant(2, Rational(5));
    Rational v = p.eval({Rational(2), Rational::parse("1/2")});
    CHECK(v == Rational(2) - Rational::parse("3/2") + Rational(5));
    CHECK(p.eval_double({2.0, 0.5}) == doctest::Approx(v.to_double()));
}

TEST_CASE("composition agrees with evaluation") {
    Rng rng(7);
    SparsePoly x = SparsePoly::variable(2, 0), y = SparsePoly::variable(2, 1);
    SparsePoly inner0 = x * y + SparsePoly::constant(2, Rational(1));
    SparsePoly inner1 = x - y;
    SparsePoly outer = x * x + Rational(2) * y;
    SparsePoly composed = outer.compose({inner0, inner1});
    for (int i = 0; i < 25; ++i) {
        Rational a = sample_rational(rng, 9), b = sample_rational(rng, 9);
        Rational direct = outer.eval({inner0.eval({a, b}), inner1.eval({a, b})});
        CHECK(composed.eval({a, b}) == direct);
    }
}

TEST_CASE("distributivity on random polynomials") {
    Rng rng(11);
    auto random_poly = [&rng]() {
        SparsePoly p(2);
        int terms = static_cast<int>(rng.range(1, 4));
        for (int t = 0; t < terms; ++t) {
            Exps e{static_cast<uint32_t>(rng.range(0, 3)), static_cast<uint32_t>(rng.range(0, 3)), 0};
            p.set_coeff(e, p.coeff(e) + sample_rational(rng, 6));
        }
        return p;
    };
    for (int i = 0; i < 40; ++i) {
        SparsePoly p = random_poly(), q = random_poly(), r = random_poly();
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p * q == q * p);
    }
}

TEST_CASE("slicing fixes the first variable") {
    SparsePoly x = SparsePoly::variable(2, 0), y = SparsePoly::variable(2, 1);
    SparsePoly h = y * (x * y - SparsePoly::constant(2, Rational(2)));
    SparsePoly at3 = slice_at_x(h, Rational(3));
    CHECK(at3.arity() == 1);
    CHECK(at3.eval({Rational(1)}) == Rational(1));
    CHECK(at3.eval({Rational(2)}) == Rational(8));
}

TEST_CASE("dense root isolation") {
    // (t - 1)(t - 3) = 3 - 4t + t^2
    DensePoly p{Rational(3), Rational(-4), Rational(1)};
    CHECK(has_root_in_open(p, ExtRational{Rational(0)}, ExtRational{Rational(2)}));
    CHECK(!has_root_in_open(p, ExtRational{Rational(4)}, ExtRational::pos_inf()));
    CHECK(has_root_in_open(p, ExtRational::neg_inf(), ExtRational{Rational(2)}));
    CHECK(!has_root_in_open(p, ExtRational{Rational(1)}, ExtRational{Rational(3)}));

    DensePoly q{Rational(-4), Rational(0), Rational(1)}; // t^2 - 4
    CHECK(dense_eval(q, Rational(3)) == Rational(5));
    CHECK(dense_degree(dense_gcd(p, q)) == 0); // coprime
    DensePoly common = dense_gcd(p, DensePoly{Rational(-1), Rational(1)});
    CHECK(dense_degree(common) == 1); // shares t - 1

    CHECK(dense_sign_at(p, ExtRational::pos_inf()) == 1);
    CHECK(dense_sign_at(DensePoly{Rational(0), Rational(-1)}, ExtRational::pos_inf()) == -1);
    DensePoly deflated = dense_deflate(p, Rational(1));
    CHECK(dense_degree(deflated) == 1);
    CHECK(dense_eval(deflated, Rational(3)) == Rational(0));
}

TEST_CASE("sampler streams are deterministic") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

    SamplePlan plan;
    plan.seed = 9;
    plan.count = 50;
    plan.scheme = Scheme::heavy;
    Rng r1(plan.seed), r2(plan.seed);
    for (size_t i = 0; i < plan.count; ++i) {
        auto s1 = sample_domain(2, r1, plan, i), s2 = sample_domain(2, r2, plan, i);
        CHECK(s1 == s2);
    }
}

TEST_CASE("window cell centers are exact") {
    Window w{Rational(0), Rational(10), Rational(0), Rational(10)};
    CHECK(w.cell_center_x(0, 200) == Rational::parse("1/40"));
    CHECK(w.cell_center_y(199, 200) == Rational(10) - Rational::parse("1/40"));
    CHECK(w.cell_width(200) == doctest::Approx(0.05));
}
