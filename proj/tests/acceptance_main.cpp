// Acceptance gate: one line per criterion, PASS/FAIL, exit 0 only when all
// criteria pass. Arguments: <cli-binary> <catalog-dir> <scratch-dir>.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "polyfold/error.hpp"
#include "polyfold/pipeline.hpp"
#include "polyfold/serialization.hpp"
#include "polyfold/verify.hpp"

using namespace polyfold;
namespace fs = std::filesystem;

namespace {

std::string g_cli, g_catalog, g_scratch;
int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const std::string& name, bool pass, const std::string& note) {
    if (!pass) ++g_failures;
    std::printf("%s  %s%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                note.empty() ? "" : " | ", note.c_str());
    std::fflush(stdout);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw Error("io_error", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

ValidatedPolygon catalog_polygon(const std::string& name) {
    return polygon_from_json(read_file(g_catalog + "/" + name + ".json"));
}

int run_cli(const std::string& args, const std::string& log_name) {
    std::string cmd = g_cli + " " + args + " > " + g_scratch + "/" + log_name + ".log 2>&1";
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    if (WIFEXITED(rc)) return WEXITSTATUS(rc);
    return -2;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

void criterion_base_maps() {
    auto t0 = std::chrono::steady_clock::now();
    std::string note;
    bool pass = true;
    try {
        StagedMap hp = build_halfplane_map(catalog_polygon("halfplane"));
        StagedMap qd = build_quadrant_map(catalog_polygon("quadrant"));

        SamplePlan exact;
        exact.seed = 101;
        exact.count = 100000;
        exact.scheme = Scheme::heavy;
        ContainmentResult hc = check_containment(hp, target_region(hp), exact);
        ContainmentResult qc = check_containment(qd, target_region(qd), exact);
        pass = hc.ok() && qc.ok();
        if (!pass) note = "containment: " + hc.first_failure + qc.first_failure;

        SamplePlan heavy;
        heavy.seed = 102;
        heavy.count = 1000000;
        heavy.scheme = Scheme::heavy;
        Window wh{Rational(-10), Rational(10), Rational(0), Rational(10)};
        CoverageResult ch = check_coverage(hp, target_region(hp), wh, 200, heavy);
        Window wq{Rational(0), Rational(10), Rational(0), Rational(10)};
        CoverageResult cq = check_coverage(qd, target_region(qd), wq, 200, heavy);
        pass = pass && ch.fraction() >= 0.99 && cq.fraction() >= 0.99;
        note += "half-plane coverage " + fmt(ch.fraction()) + ", corner coverage " +
                fmt(cq.fraction());
        double dt = seconds_since(t0);
        note += ", " + fmt(dt) + "s";
        pass = pass && dt < 60.0;
    } catch (const std::exception& e) {
        pass = false;
        note = std::string("exception: ") + e.what();
    }
    report("1 base maps: exact containment and grid coverage", pass, note);
}

// ---------------------------------------------------------------- criterion 2

struct RandomCurtain {
    BasicPolygonalSet set;
    ExtRational c, d;
};

RandomCurtain random_curtain(Rng& rng) {
    size_t m = static_cast<size_t>(rng.range(1, 4));
    // strictly increasing edge slopes with a zero pivot so the two unbounded
    // directions straddle the vertical
    std::vector<Rational> slopes;
    Rational s(0);
    for (size_t j = 0; j <= m; ++j) {
        s = s + Rational(rng.range(1, 6), rng.range(1, 4));
        slopes.push_back(s);
    }
    Rational pivot = slopes[static_cast<size_t>(rng.below(slopes.size()))];
    for (auto& v : slopes) v = v - pivot;

    VPolygon raw;
    Point2 cur{Rational(rng.range(-3, 3)), Rational(0)};
    raw.vertices.push_back(cur);
    for (size_t j = 1; j < m; ++j) {
        Rational step(rng.range(1, 5), rng.range(1, 3));
        cur = cur + step * Vec2{Rational(1), slopes[j]};
        raw.vertices.push_back(cur);
    }
    raw.dir_in = {Rational(-1), -slopes.front()};
    raw.dir_out = {Rational(1), slopes.back()};

    Rational min_y = raw.vertices[0].y;
    for (const auto& v : raw.vertices) min_y = v.y < min_y ? v.y : min_y;
    Rational lift = -min_y;
    if (rng.chance(1, 2)) lift = lift + Rational(rng.range(0, 4), rng.range(1, 3));
    for (auto& v : raw.vertices) v.y = v.y + lift;

    ValidatedPolygon p = ValidatedPolygon::validate(raw);
    BasicPolygonalSet set = BasicPolygonalSet::closed(p);
    if (rng.chance(3, 10) && p.vertex_count() > 0)
        set.exclude_vertex(static_cast<size_t>(rng.below(p.vertex_count())));

    RandomCurtain out{std::move(set), ExtRational(Rational(0)), ExtRational(Rational(1))};
    int shape = static_cast<int>(rng.below(5));
    Rational a(rng.range(-8, 8), rng.range(1, 3));
    Rational b = a + Rational(rng.range(1, 8), rng.range(1, 3));
    if (shape == 0) {
        out.c = ExtRational::neg_inf();
        out.d = ExtRational(b);
    } else if (shape == 1) {
        out.c = ExtRational(a);
        out.d = ExtRational::pos_inf();
    } else {
        out.c = ExtRational(a);
        out.d = ExtRational(b);
    }
    return out;
}

void criterion_fold_suite() {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string note;
    size_t total = 0, valid = 0;
    try {
        Rng rng(2024);
        for (int i = 0; i < 100 && pass; ++i) {
            RandomCurtain rc = random_curtain(rng);
            FoldData fd = build_fold_stage(rc.set, rc.c, rc.d, SignVariant::lemma);

            std::vector<Rational> fibers;
            Rational lo = fd.spec.c.is_finite() ? fd.spec.c.value() : Rational(-12);
            Rational hi = fd.spec.d.is_finite() ? fd.spec.d.value() : Rational(12);
            for (int k = 1; k <= 8; ++k)
                fibers.push_back(lo + Rational(k, 9) * (hi - lo));
            for (int k = 0; k < 5; ++k)
                fibers.push_back(lo - Rational(rng.range(1, 9), rng.range(1, 3)));
            for (int k = 0; k < 5; ++k)
                fibers.push_back(hi + Rational(rng.range(1, 9), rng.range(1, 3)));
            if (fd.spec.c.is_finite()) fibers.push_back(fd.spec.c.value());
            if (fd.spec.d.is_finite()) fibers.push_back(fd.spec.d.value());
            while (fibers.size() < 20)
                fibers.push_back(Rational(rng.range(-12, 12), rng.range(1, 4)));
            fibers.resize(20);

            for (const Rational& r : fibers) {
                FiberCertificate cert = certify_fiber(fd.spec, fd.input, r);
                ++total;
                if (cert.valid) {
                    ++valid;
                } else {
                    pass = false;
                    note = "curtain " + std::to_string(i) + ", fiber " + r.str() + ": ";
                    for (const auto& chk : cert.checks)
                        if (!chk.ok) note += chk.name + " ";
                    break;
                }
            }
        }
        double dt = seconds_since(t0);
        note += std::to_string(valid) + "/" + std::to_string(total) + " certificates, " +
                fmt(dt) + "s";
        pass = pass && total == 2000 && dt < 120.0;
    } catch (const std::exception& e) {
        pass = false;
        note = std::string("exception: ") + e.what();
    }
    report("2 folding suite: randomized curtain certificates", pass, note);
}

// ---------------------------------------------------------------- criterion 3

void criterion_pipeline() {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string note;
    try {
        const char* names[] = {"halfplane", "angle", "n3", "n4", "n5"};
        for (const char* name : names) {
            ValidatedPolygon p = catalog_polygon(name);
            StagedMap m = build_v_polygon_map(p);

            SamplePlan per_stage;
            per_stage.seed = 301;
            per_stage.count = 10000;
            per_stage.denominator_bound = 200;
            StagewiseResult sw = check_stagewise(m, per_stage);
            if (!sw.ok()) {
                pass = false;
                note += std::string(name) + " stagewise: " + sw.first_failure + "; ";
                continue;
            }

            Window w = Window::around(*m.target, Rational(5));
            SamplePlan cover;
            cover.seed = 302;
            cover.count = 300000;
            cover.scheme = Scheme::guided;
            CoverageResult cov = check_coverage(m, target_region(m), w, 200, cover);
            note += std::string(name) + " " + fmt(cov.fraction()) + " ";
            if (cov.fraction() < 0.98) {
                pass = false;
                note += "(below 0.98) ";
            }
        }
        double dt = seconds_since(t0);
        note += fmt(dt) + "s";
        pass = pass && dt < 600.0;
    } catch (const std::exception& e) {
        pass = false;
        note = std::string("exception: ") + e.what();
    }
    report("3 pipeline: per-stage containment and final coverage", pass, note);
}

// ---------------------------------------------------------------- criterion 4

void criterion_sign_regression() {
    bool pass = false;
    std::string note;
    try {
        ValidatedPolygon p = catalog_polygon("n3");
        StagedMap good = build_v_polygon_map(p, SignVariant::lemma);
        StagedMap bad = build_v_polygon_map(p, SignVariant::paper_step4);

        Window w = Window::around(p, Rational(5));
        SamplePlan plan;
        plan.seed = 404;
        plan.count = 150000;
        plan.scheme = Scheme::guided;
        CoverageResult cg = check_coverage(good, target_region(good), w, 100, plan);
        CoverageResult cb = check_coverage(bad, target_region(bad), w, 100, plan);
        pass = cg.fraction() >= 0.98 && cb.fraction() <= 0.98 - 0.05;
        note = "consistent " + fmt(cg.fraction()) + ", printed sign " + fmt(cb.fraction());
    } catch (const std::exception& e) {
        pass = false;
        note = std::string("exception: ") + e.what();
    }
    report("4 sign regression: printed variant loses coverage", pass, note);
}

// ---------------------------------------------------------------- criterion 5

void criterion_interior() {
    bool pass = true;
    std::string note;
    try {
        StagedMap qi = build_interior_map(catalog_polygon("quadrant"));
        StagedMap ni = build_interior_map(catalog_polygon("n3"));

        SamplePlan exact;
        exact.seed = 501;
        exact.count = 100000;
        exact.scheme = Scheme::heavy;
        ContainmentResult rq = check_containment(qi, target_region(qi), exact);
        SamplePlan exact_deep = exact;
        exact_deep.denominator_bound = 40;
        ContainmentResult rn = check_containment(ni, target_region(ni), exact_deep);
        if (!rq.ok() || !rn.ok()) {
            pass = false;
            note += "strict containment: " + rq.first_failure + rn.first_failure + "; ";
        }

        SamplePlan cover;
        cover.seed = 502;
        cover.count = 300000;
        cover.scheme = Scheme::guided;
        Window wq = Window::around(catalog_polygon("quadrant"), Rational(5));
        CoverageResult cq = check_coverage(qi, target_region(qi), wq, 100, cover);
        Window wn = Window::around(catalog_polygon("n3"), Rational(5));
        CoverageResult cn = check_coverage(ni, target_region(ni), wn, 100, cover);
        note += "interior coverage " + fmt(cq.fraction()) + " / " + fmt(cn.fraction());
        if (cq.fraction() < 0.98 || cn.fraction() < 0.98) {
            pass = false;
            note += " (below 0.98)";
        }

        auto [g1, g2] = open_halfplane_factor();
        Rng rng(503);
        size_t positive = 0;
        const size_t n = 1000000;
        for (size_t i = 0; i < n; ++i) {
            Rational x = sample_rational_heavy(rng, 1000);
            Rational y = sample_rational_heavy(rng, 1000);
            if (g2.eval({x, y}).sign() > 0) ++positive;
        }
        if (positive != n) {
            pass = false;
            note += "; factor positivity " + std::to_string(positive) + "/" + std::to_string(n);
        }

        VPolygon upper;
        upper.kind = VPolygon::Kind::half_plane;
        upper.vertices = {{Rational(0), Rational(0)}};
        upper.dir_in = {Rational(1), Rational(0)};
        upper.dir_out = upper.dir_in;
        ValidatedPolygon up = ValidatedPolygon::validate(upper);
        StagedMap gmap;
        gmap.domain_arity = 2;
        gmap.stages.push_back(BaseStage{BaseKind::open_upper});
        gmap.expected_after.push_back(std::nullopt);
        gmap.target = up;
        gmap.interior_map = true;
        SamplePlan gcover;
        gcover.seed = 504;
        gcover.count = 1000000;
        gcover.scheme = Scheme::guided;
        Window wg{Rational(-10), Rational(10), Rational(0), Rational(10)};
        CoverageResult cgf = check_coverage(gmap, strict_interior(up), wg, 200, gcover);
        note += "; open factor coverage " + fmt(cgf.fraction());
        if (cgf.fraction() < 0.99) {
            pass = false;
            note += " (below 0.99)";
        }
    } catch (const std::exception& e) {
        pass = false;
        note = std::string("exception: ") + e.what();
    }
    report("5 interior: strict containment, interior coverage, open factor", pass, note);
}

// ---------------------------------------------------------------- criterion 6

void criterion_consistency() {
    bool pass = true;
    std::string note;
    try {
        std::vector<std::pair<std::string, StagedMap>> maps;
        maps.emplace_back("halfplane", build_halfplane_map(catalog_polygon("halfplane")));
        maps.emplace_back("quadrant", build_quadrant_map(catalog_polygon("quadrant")));
        maps.emplace_back("angle", build_quadrant_map(catalog_polygon("angle")));
        maps.emplace_back("interior-quadrant", build_interior_map(catalog_polygon("quadrant")));
        size_t eligible = 0;
        for (auto& [name, m] : maps) {
            if (m.predicted_degree() > 64) continue;
            ++eligible;
            std::vector<SparsePoly> expanded = expand(m);
            SamplePlan plan;
            plan.seed = 606;
            plan.count = 1000;
            CrossCheckResult r = cross_check_expansion(m, expanded, plan);
            if (!r.ok()) {
                pass = false;
                note += name + ": " + r.first_mismatch + "; ";
            }
        }
        note += std::to_string(eligible) + " maps expanded";
        pass = pass && eligible >= 4;
    } catch (const std::exception& e) {
        pass = false;
        note = std::string("exception: ") + e.what();
    }
    report("6 consistency: expanded equals staged on rational points", pass, note);
}

// ---------------------------------------------------------------- criterion 7

void criterion_determinism() {
    bool pass = false;
    std::string note;
    try {
        std::string map_path = g_scratch + "/det-map.json";
        int rc = run_cli("build --input " + g_catalog + "/angle.json --output " + map_path,
                         "det-build");
        std::string r1 = g_scratch + "/det-report-1.json";
        std::string r2 = g_scratch + "/det-report-2.json";
        std::string args = "verify --input " + map_path + " --seed 99 --samples 5000 --grid 60";
        int v1 = run_cli(args + " --output " + r1, "det-verify-1");
        int v2 = run_cli(args + " --output " + r2, "det-verify-2");
        bool same = read_file(r1) == read_file(r2);
        pass = rc == 0 && v1 == 0 && v2 == 0 && same;
        note = same ? "reports byte-identical" : "reports differ";
        if (v1 != 0 || v2 != 0)
            note += ", verify exits " + std::to_string(v1) + "/" + std::to_string(v2);
    } catch (const std::exception& e) {
        pass = false;
        note = std::string("exception: ") + e.what();
    }
    report("7 determinism: identical reports for identical configs", pass, note);
}

// -------------------------------------------------------------------- extras

void extra_cli_contract() {
    bool pass = true;
    std::string note;
    try {
        // round trip: built file parses back to a chain that serializes identically
        std::string map_path = g_scratch + "/rt-map.json";
        int rc = run_cli("build --input " + g_catalog + "/n3.json --output " + map_path,
                         "rt-build");
        std::string text = read_file(map_path);
        StagedMap back = map_from_json(text);
        bool rt = map_to_json(back) == text && back.stages.size() == 9;
        if (rc != 0 || !rt) {
            pass = false;
            note += "round trip broken; ";
        }

        // validation failure: parallel unbounded edges exit 2 with the code
        std::string strip_path = g_scratch + "/strip.json";
        write_file(strip_path, R"({
  "kind": "polygon",
  "vertices": [["0", "1"], ["1", "0"]],
  "dir_in": ["-1", "2"],
  "dir_out": ["1", "-2"]
})");
        int bad = run_cli("build --input " + strip_path + " --output " + g_scratch +
                              "/strip-map.json",
                          "strip-build");
        std::string log = read_file(g_scratch + "/strip-build.log");
        if (bad != 2 || log.find("parallel_unbounded_edges") == std::string::npos) {
            pass = false;
            note += "strip exit " + std::to_string(bad) + "; ";
        }

        // printed sign variant: verify must fail with exit 1
        std::string bad_map = g_scratch + "/printed-map.json";
        run_cli("build --input " + g_catalog + "/n3.json --paper-step4-sign --output " + bad_map,
                "printed-build");
        int bad_verify = run_cli("verify --input " + bad_map + " --samples 4000 --grid 50 --output " +
                                     g_scratch + "/printed-report.json",
                                 "printed-verify");
        if (bad_verify != 1) {
            pass = false;
            note += "printed-sign verify exit " + std::to_string(bad_verify) + "; ";
        }

        // expansion refusal on deep chains
        int deep = run_cli("expand --input " + map_path + " --output " + g_scratch +
                               "/rt-expanded.json",
                           "rt-expand");
        std::string deep_log = read_file(g_scratch + "/rt-expand.log");
        if (deep != 2 || deep_log.find("degree_cap_exceeded") == std::string::npos) {
            pass = false;
            note += "expand exit " + std::to_string(deep) + "; ";
        }

        // plot determinism
        std::string p1 = g_scratch + "/plot-1.svg", p2 = g_scratch + "/plot-2.svg";
        run_cli("plot --input " + map_path + " --seed 5 --samples 400 --output " + p1, "plot-1");
        run_cli("plot --input " + map_path + " --seed 5 --samples 400 --output " + p2, "plot-2");
        if (read_file(p1) != read_file(p2) ||
            read_file(g_scratch + "/plot-1.csv") != read_file(g_scratch + "/plot-2.csv")) {
            pass = false;
            note += "plots differ; ";
        }

        // interior build through the CLI round trips too
        std::string imap = g_scratch + "/interior-map.json";
        int irc = run_cli("interior --input " + g_catalog + "/quadrant.json --output " + imap,
                          "interior-build");
        StagedMap iback = map_from_json(read_file(imap));
        if (irc != 0 || !iback.interior_map || iback.domain_arity != 3) {
            pass = false;
            note += "interior round trip broken; ";
        }

        if (pass) note = "round trip, exit codes, plot determinism";
    } catch (const std::exception& e) {
        pass = false;
        note = std::string("exception: ") + e.what();
    }
    report("extra: command-line contract", pass, note);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::fprintf(stderr, "usage: %s <cli> <catalog-dir> <scratch-dir>\n", argv[0]);
        return 2;
    }
    g_cli = argv[1];
    g_catalog = argv[2];
    g_scratch = argv[3];
    fs::create_directories(g_scratch);

    criterion_base_maps();
    criterion_fold_suite();
    criterion_pipeline();
    criterion_sign_regression();
    criterion_interior();
    criterion_consistency();
    criterion_determinism();
    extra_cli_contract();

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", g_failures);
    return 1;
}
