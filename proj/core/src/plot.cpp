#include "polyfold/plot.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "polyfold/error.hpp"

namespace polyfold {

namespace {

std::vector<std::pair<double, double>> image_samples(const StagedMap& m, const SamplePlan& plan,
                                                     const Window& w) {
    Rng rng(plan.seed);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(plan.count);
    for (size_t i = 0; i < plan.count; ++i) {
        auto [x, y] = sample_plane_heavy(rng, w);
        std::vector<double> in{x, y};
        if (m.domain_arity == 3) in.push_back(sample_plane_heavy(rng, w).first);
        auto out = m.eval_double(in);
        if (!std::isfinite(out[0]) || !std::isfinite(out[1])) continue;
        pts.emplace_back(out[0], out[1]);
    }
    return pts;
}

void appendf(std::string& s, const char* fmt, double a, double b) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    s += buf;
}

}  // namespace

std::string plot_csv(const StagedMap& m, const SamplePlan& plan, const Window& w) {
    std::string out = "x,y\n";
    for (const auto& [x, y] : image_samples(m, plan, w)) appendf(out, "%.6f,%.6f\n", x, y);
    return out;
}

std::string plot_svg(const StagedMap& m, const SamplePlan& plan, const Window& w) {
    const double x0 = w.x0.to_double(), x1 = w.x1.to_double();
    const double y0 = w.y0.to_double(), y1 = w.y1.to_double();
    require(x1 > x0 && y1 > y0, "bad_window", "window is empty");
    const double width = 760.0;
    const double height = width * (y1 - y0) / (x1 - x0);
    const double pad = 20.0;
    auto sx = [&](double x) { return pad + (x - x0) / (x1 - x0) * width; };
    auto sy = [&](double y) { return pad + (y1 - y) / (y1 - y0) * height; };

    std::string svg;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.0f %.0f\">\n",
                  width + 2 * pad, height + 2 * pad, width + 2 * pad, height + 2 * pad);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"#fff\" "
                  "stroke=\"#888\"/>\n",
                  pad, pad, width, height);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<clipPath id=\"win\"><rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" "
                  "height=\"%.1f\"/></clipPath>\n<g clip-path=\"url(#win)\">\n",
                  pad, pad, width, height);
    svg += buf;

    for (const auto& [px, py] : image_samples(m, plan, w)) {
        if (px < x0 || px > x1 || py < y0 || py > y1) continue;
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.2\" fill=\"#1f77b4\" "
                                        "fill-opacity=\"0.5\"/>\n",
                      sx(px), sy(py));
        svg += buf;
    }

    if (m.target.has_value()) {
        const VPolygon& p = m.target->data();
        const double reach = 4.0 * (std::abs(x1 - x0) + std::abs(y1 - y0));
        auto ray_end = [&](const Point2& from, const Vec2& dir) {
            double dx = dir.x.to_double(), dy = dir.y.to_double();
            double n = std::hypot(dx, dy);
            return std::pair<double, double>{from.x.to_double() + reach * dx / n,
                                             from.y.to_double() + reach * dy / n};
        };
        std::string path;
        if (m.target->is_half_plane()) {
            auto a = ray_end(p.vertices[0], -p.dir_in);
            auto b = ray_end(p.vertices[0], p.dir_in);
            appendf(path, "M %.2f %.2f ", sx(a.first), sy(a.second));
            appendf(path, "L %.2f %.2f", sx(b.first), sy(b.second));
        } else {
            auto a = ray_end(p.vertices.front(), p.dir_in);
            appendf(path, "M %.2f %.2f ", sx(a.first), sy(a.second));
            for (const Point2& v : p.vertices)
                appendf(path, "L %.2f %.2f ", sx(v.x.to_double()), sy(v.y.to_double()));
            auto b = ray_end(p.vertices.back(), p.dir_out);
            appendf(path, "L %.2f %.2f", sx(b.first), sy(b.second));
        }
        svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.6\"";
        if (m.interior_map) svg += " stroke-dasharray=\"6 4\"";
        svg += "/>\n";
    }

    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace polyfold
