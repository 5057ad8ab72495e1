#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyfold/error.hpp"
#include "polyfold/pipeline.hpp"
#include "polyfold/plot.hpp"
#include "polyfold/serialization.hpp"
#include "polyfold/verify.hpp"

using namespace polyfold;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "io_error", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "io_error", "cannot write " + path);
    out << content;
    require(out.good(), "io_error", "short write to " + path);
}

Window parse_window(const std::string& text) {
    std::vector<Rational> parts;
    std::string cur;
    std::istringstream ss(text);
    while (std::getline(ss, cur, ',')) parts.push_back(Rational::parse(cur));
    require(parts.size() == 4, "bad_window", "window needs x0,x1,y0,y1");
    Window w{parts[0], parts[1], parts[2], parts[3]};
    require(w.x0 < w.x1 && w.y0 < w.y1, "bad_window", "window is empty");
    return w;
}

std::string sibling_path(const std::string& path, const std::string& old_suffix,
                         const std::string& new_suffix) {
    if (path.size() > old_suffix.size() &&
        path.compare(path.size() - old_suffix.size(), old_suffix.size(), old_suffix) == 0)
        return path.substr(0, path.size() - old_suffix.size()) + new_suffix;
    return path + new_suffix;
}

struct CommonOpts {
    std::string input, output;
    uint64_t seed = 1;
    size_t samples = 0;
    std::string window;
    size_t grid = 200;
    double threshold = -1.0;
    unsigned long long degree_cap = 64;
    bool paper_step4 = false;
};

SignVariant chosen_variant(const CommonOpts& o) {
    return o.paper_step4 ? SignVariant::paper_step4 : SignVariant::lemma;
}

int cmd_build(const CommonOpts& o, bool interior) {
    ValidatedPolygon p = polygon_from_json(read_file(o.input));
    StagedMap m = interior ? build_interior_map(p, chosen_variant(o))
                           : build_v_polygon_map(p, chosen_variant(o));
    std::string out = o.output.empty() ? "map.json" : o.output;
    write_file(out, map_to_json(m));
    std::cout << "wrote " << out << ": " << m.stages.size() << " stages, " << m.fold_count()
              << " folds, predicted degree " << m.predicted_degree() << "\n";
    return 0;
}

int cmd_expand(const CommonOpts& o) {
    StagedMap m = map_from_json(read_file(o.input));
    std::vector<SparsePoly> expanded = expand(m, o.degree_cap);
    std::string out = o.output.empty() ? sibling_path(o.input, ".json", ".expanded.json") : o.output;
    write_file(out, map_to_json(m, &expanded));
    std::cout << "wrote " << out << ": degree " << expanded[0].total_degree() << ", "
              << expanded[0].term_count() << " + " << expanded[1].term_count() << " terms\n";
    return 0;
}

int cmd_plot(const CommonOpts& o) {
    StagedMap m = map_from_json(read_file(o.input));
    Window w;
    if (!o.window.empty()) {
        w = parse_window(o.window);
    } else {
        require(m.target.has_value(), "no_target", "map has no target; pass --window");
        w = Window::around(*m.target, Rational(5));
    }
    SamplePlan plan;
    plan.seed = o.seed;
    plan.count = o.samples == 0 ? 4000 : o.samples;
    std::string svg_path = o.output.empty() ? "plot.svg" : o.output;
    write_file(svg_path, plot_svg(m, plan, w));
    std::string csv_path = sibling_path(svg_path, ".svg", ".csv");
    write_file(csv_path, plot_csv(m, plan, w));
    std::cout << "wrote " << svg_path << " and " << csv_path << "\n";
    return 0;
}

int cmd_verify(const CommonOpts& o) {
    std::string text = read_file(o.input);
    StagedMap m = map_from_json(text);
    Region target = target_region(m);
    Window w;
    if (!o.window.empty()) {
        w = parse_window(o.window);
    } else {
        require(m.target.has_value(), "no_target", "map has no target; pass --window");
        w = Window::around(*m.target, Rational(5));
    }

    VerifySummary s;
    s.input_path = o.input;
    s.seed = o.seed;
    s.samples = o.samples == 0 ? 20000 : o.samples;
    s.grid = o.grid;
    s.window = w.str();
    s.predicted_degree = m.predicted_degree();
    s.stage_count = m.stages.size();
    s.fold_count = m.fold_count();
    s.variant = m.variant == SignVariant::lemma ? "lemma" : "paper_step4";

    bool composed = s.fold_count > 0 || m.interior_map;
    s.threshold = o.threshold >= 0 ? o.threshold : (composed ? 0.98 : 0.99);

    SamplePlan exact_plan;
    exact_plan.seed = o.seed;
    exact_plan.count = s.samples;
    exact_plan.scheme = Scheme::heavy;
    s.containment_exact_chain = s.predicted_degree <= kExactChainDegreeLimit;
    if (s.containment_exact_chain) s.containment = check_containment(m, target, exact_plan);

    SamplePlan stage_plan = exact_plan;
    stage_plan.count = std::max<size_t>(200, s.samples / 20);
    s.stagewise = check_stagewise(m, stage_plan);

    s.folds = certify_map_folds(m, 20, o.seed);

    SamplePlan cover_plan;
    cover_plan.seed = o.seed;
    cover_plan.count = s.samples;
    cover_plan.scheme = Scheme::guided;
    s.scheme = scheme_name(cover_plan.scheme);
    s.coverage = check_coverage(m, target, w, s.grid, cover_plan);

    if (auto expanded = expanded_from_json(text)) {
        SamplePlan cross_plan;
        cross_plan.seed = o.seed;
        cross_plan.count = 1000;
        s.cross_check = cross_check_expansion(m, *expanded, cross_plan);
    }

    bool folds_ok = true;
    for (const auto& f : s.folds) folds_ok = folds_ok && f.ok();
    s.pass = (!s.containment || s.containment->ok()) && s.stagewise.ok() && folds_ok &&
             s.coverage->fraction() >= s.threshold && (!s.cross_check || s.cross_check->ok());

    std::string out = o.output.empty() ? sibling_path(o.input, ".json", ".report.json") : o.output;
    write_file(out, verify_report_json(s));
    write_file(sibling_path(out, ".json", ".misses.csv"), misses_csv(*s.coverage));

    if (s.containment)
        std::cout << "containment: " << (s.containment->ok() ? "ok" : "FAIL") << " ("
                  << s.containment->samples << " exact samples)\n";
    else
        std::cout << "containment: per-stage only (predicted degree " << s.predicted_degree
                  << ")\n";
    std::cout << "stagewise: " << (s.stagewise.ok() ? "ok" : "FAIL") << " ("
              << s.stagewise.stages_checked << " stages)\n";
    std::cout << "folds: " << (folds_ok ? "ok" : "FAIL") << " (" << s.folds.size()
              << " certified)\n";
    char frac[32];
    std::snprintf(frac, sizeof(frac), "%.4f", s.coverage->fraction());
    std::cout << "coverage: " << frac << " of " << s.coverage->target_cells
              << " cells (threshold " << s.threshold << ")\n";
    if (s.cross_check)
        std::cout << "expansion cross-check: " << (s.cross_check->ok() ? "ok" : "FAIL") << "\n";
    std::cout << (s.pass ? "PASS" : "FAIL") << "\n";
    return s.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial maps of the plane onto unbounded convex polygons"};
    app.require_subcommand(1);

    CommonOpts o;
    auto add_common = [&](CLI::App* sub, bool sampling) {
        sub->add_option("--input", o.input, "input file")->required();
        sub->add_option("--output", o.output, "output file");
        if (sampling) {
            sub->add_option("--seed", o.seed, "sampler seed");
            sub->add_option("--samples", o.samples, "sample count");
            sub->add_option("--window", o.window, "x0,x1,y0,y1 (rationals)");
            sub->add_option("--grid", o.grid, "coverage grid side");
            sub->add_option("--threshold", o.threshold, "coverage pass threshold");
        }
    };

    CLI::App* build = app.add_subcommand("build", "polygon to staged map");
    add_common(build, false);
    build->add_flag("--paper-step4-sign", o.paper_step4,
                    "use the printed sign in the second fold of each level");

    CLI::App* verify = app.add_subcommand("verify", "check a staged map against its target");
    add_common(verify, true);

    CLI::App* interior = app.add_subcommand("interior", "polygon to interior-covering map");
    add_common(interior, false);
    interior->add_flag("--paper-step4-sign", o.paper_step4,
                       "use the printed sign in the second fold of each level");

    CLI::App* plot = app.add_subcommand("plot", "sample a map into SVG and CSV");
    add_common(plot, true);

    CLI::App* expand_cmd = app.add_subcommand("expand", "compose a chain into explicit polynomials");
    add_common(expand_cmd, false);
    expand_cmd->add_option("--degree-cap", o.degree_cap, "refuse expansions past this degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(build)) return cmd_build(o, false);
        if (app.got_subcommand(interior)) return cmd_build(o, true);
        if (app.got_subcommand(verify)) return cmd_verify(o);
        if (app.got_subcommand(plot)) return cmd_plot(o);
        return cmd_expand(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 2;
    }
}
