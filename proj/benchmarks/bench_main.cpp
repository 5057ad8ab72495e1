#include <benchmark/benchmark.h>

#include "polyfold/folding.hpp"
#include "polyfold/pipeline.hpp"
#include "polyfold/sampling.hpp"

using namespace polyfold;

namespace {

ValidatedPolygon bench_polygon() {
    VPolygon raw;
    raw.vertices = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
    raw.dir_in = {Rational(-1), Rational(3)};
    raw.dir_out = {Rational(2), Rational(1)};
    return ValidatedPolygon::validate(raw);
}

SparsePoly bench_poly(int terms) {
    SparsePoly p(2);
    for (int i = 0; i < terms; ++i)
        p.set_coeff({static_cast<unsigned>(i % 5), static_cast<unsigned>(i / 5)},
                    Rational(i + 1, 3));
    return p;
}

void poly_mul(benchmark::State& state) {
    SparsePoly a = bench_poly(static_cast<int>(state.range(0)));
    SparsePoly b = bench_poly(static_cast<int>(state.range(0)) + 2);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(poly_mul)->Arg(6)->Arg(12)->Arg(20);

void poly_compose(benchmark::State& state) {
    SparsePoly outer = bench_poly(8);
    std::vector<SparsePoly> args = {bench_poly(4), bench_poly(5)};
    for (auto _ : state) benchmark::DoNotOptimize(outer.compose(args));
}
BENCHMARK(poly_compose);

void fold_build(benchmark::State& state) {
    BasicPolygonalSet set = BasicPolygonalSet::closed(bench_polygon());
    for (auto _ : state)
        benchmark::DoNotOptimize(
            build_fold_stage(set, ExtRational(Rational(0)), ExtRational(Rational(1)),
                             SignVariant::lemma));
}
BENCHMARK(fold_build);

void fiber_certificate(benchmark::State& state) {
    BasicPolygonalSet set = BasicPolygonalSet::closed(bench_polygon());
    FoldData fd = build_fold_stage(set, ExtRational(Rational(0)), ExtRational(Rational(1)),
                                   SignVariant::lemma);
    Rational r(1, 2);
    for (auto _ : state) benchmark::DoNotOptimize(certify_fiber(fd.spec, fd.input, r));
}
BENCHMARK(fiber_certificate);

void chain_build(benchmark::State& state) {
    ValidatedPolygon p = bench_polygon();
    for (auto _ : state) benchmark::DoNotOptimize(build_v_polygon_map(p));
}
BENCHMARK(chain_build);

void chain_eval_exact(benchmark::State& state) {
    StagedMap m = build_v_polygon_map(bench_polygon());
    std::vector<Rational> z = {Rational(7, 3), Rational(-2, 5)};
    for (auto _ : state) benchmark::DoNotOptimize(m.eval(z));
}
BENCHMARK(chain_eval_exact);

void chain_eval_double(benchmark::State& state) {
    StagedMap m = build_v_polygon_map(bench_polygon());
    std::vector<double> z = {2.333, -0.4};
    for (auto _ : state) benchmark::DoNotOptimize(m.eval_double(z));
}
BENCHMARK(chain_eval_double);

}  // namespace

BENCHMARK_MAIN();
