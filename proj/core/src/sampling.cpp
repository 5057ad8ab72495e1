#include "polyfold/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "polyfold/error.hpp"

namespace polyfold {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::grid: return "grid";
        case Scheme::uniform: return "uniform";
        case Scheme::heavy: return "heavy";
        case Scheme::guided: return "guided";
    }
    fail("bad_scheme", "unknown scheme");
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "grid") return Scheme::grid;
    if (name == "uniform") return Scheme::uniform;
    if (name == "heavy") return Scheme::heavy;
    if (name == "guided") return Scheme::guided;
    fail("bad_scheme", "unknown scheme: " + name);
}

Window Window::around(const ValidatedPolygon& p, const Rational& margin) {
    const auto& vs = p.data().vertices;
    Rational lo_x = vs[0].x, hi_x = vs[0].x, lo_y = vs[0].y, hi_y = vs[0].y;
    for (const Point2& v : vs) {
        lo_x = std::min(lo_x, v.x);
        hi_x = std::max(hi_x, v.x);
        lo_y = std::min(lo_y, v.y);
        hi_y = std::max(hi_y, v.y);
    }
    return Window{lo_x - margin, hi_x + margin, lo_y - margin, hi_y + margin};
}

Rational Window::cell_center_x(size_t i, size_t grid) const {
    return x0 + (x1 - x0) * Rational(2 * static_cast<long long>(i) + 1, 2 * static_cast<long long>(grid));
}

Rational Window::cell_center_y(size_t j, size_t grid) const {
    return y0 + (y1 - y0) * Rational(2 * static_cast<long long>(j) + 1, 2 * static_cast<long long>(grid));
}

double Window::cell_width(size_t grid) const {
    return (x1 - x0).to_double() / static_cast<double>(grid);
}

double Window::cell_height(size_t grid) const {
    return (y1 - y0).to_double() / static_cast<double>(grid);
}

std::string Window::str() const {
    return "[" + x0.str() + "," + x1.str() + "]x[" + y0.str() + "," + y1.str() + "]";
}

Rational sample_rational(Rng& rng, long bound) {
    require(bound >= 1, "bad_plan", "denominator bound must be positive");
    long num = rng.range(-bound, bound);
    long den = rng.range(1, bound);
    return Rational(num, den);
}

Rational sample_rational_heavy(Rng& rng, long bound) {
    Rational r = sample_rational(rng, bound);
    if (rng.chance(1, 4)) {
        long k = rng.range(1, 10);
        r = r * Rational(1L << k);
    }
    return r;
}

std::vector<Rational> sample_domain(int arity, Rng& rng, const SamplePlan& plan, size_t index) {
    std::vector<Rational> out;
    out.reserve(static_cast<size_t>(arity));
    if (plan.scheme == Scheme::grid) {
        size_t side = 1;
        while (side * side < plan.count) ++side;
        if (arity == 3) {
            side = 1;
            while (side * side * side < plan.count) ++side;
        }
        size_t rem = index;
        for (int k = 0; k < arity; ++k) {
            size_t digit = rem % side;
            rem /= side;
            Rational pos = side == 1 ? Rational(0)
                                     : Rational(-plan.denominator_bound) +
                                           Rational(2 * plan.denominator_bound) *
                                               Rational(static_cast<long>(digit), static_cast<long>(side - 1));
            out.push_back(pos);
        }
        return out;
    }
    for (int k = 0; k < arity; ++k) {
        if (plan.scheme == Scheme::uniform)
            out.push_back(sample_rational(rng, plan.denominator_bound));
        else
            out.push_back(sample_rational_heavy(rng, plan.denominator_bound));
    }
    return out;
}

namespace {

enum class Zone { linear, sqrt_zone, tail };

double zone_draw(Rng& rng, Zone z, double span) {
    double sgn = rng.chance(1, 2) ? 1.0 : -1.0;
    switch (z) {
        case Zone::linear:
            return (rng.unit() * 2.0 - 1.0) * (span + 1.0);
        case Zone::sqrt_zone: {
            double t_max = std::sqrt(span) + 0.25;
            return sgn * t_max * std::sqrt(rng.unit());
        }
        case Zone::tail:
            return sgn * std::tan(rng.unit() * 1.5692) * (span + 1.0) * 0.5;
    }
    return 0.0;
}

}  // namespace

std::pair<double, double> sample_plane_heavy(Rng& rng, const Window& w) {
    double span_x = std::max(std::abs(w.x0.to_double()), std::abs(w.x1.to_double()));
    double span_y = std::max(std::abs(w.y0.to_double()), std::abs(w.y1.to_double()));
    // Correlated zone patterns; weights favor (linear, sqrt) and (sqrt, sqrt)
    // since squaring stages pull cell preimages into the sqrt zones.
    double roll = rng.unit();
    Zone zx, zy;
    if (roll < 0.40) {
        zx = Zone::linear; zy = Zone::sqrt_zone;
    } else if (roll < 0.72) {
        zx = Zone::sqrt_zone; zy = Zone::sqrt_zone;
    } else if (roll < 0.80) {
        zx = Zone::sqrt_zone; zy = Zone::linear;
    } else if (roll < 0.94) {
        zx = Zone::linear; zy = Zone::linear;
    } else {
        zx = Zone::tail; zy = Zone::tail;
    }
    return {zone_draw(rng, zx, span_x), zone_draw(rng, zy, span_y)};
}

namespace {

Point2 combine_skeleton(const ConvexPiece& piece, Rng& rng, long bound, int mode) {
    const auto& pts = piece.span_points;
    const auto& dirs = piece.span_dirs;
    require(!pts.empty(), "unsupported_region", "region piece has no span points");

    Point2 z{Rational(0), Rational(0)};
    Rational total(0);
    size_t lone = rng.below(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        bool used = mode == 0 || mode == 3 || i == lone || (mode == 2 && i == (lone + 1) % pts.size());
        if (!used) continue;
        Rational wgt(rng.range(1, bound), rng.range(1, bound));
        z = z + wgt * pts[i];
        total = total + wgt;
    }
    Rational inv_total = Rational(1) / total;
    z = inv_total * z;

    bool use_dirs = mode == 0 || mode == 3;
    if (use_dirs) {
        for (const Vec2& d : dirs) {
            if (mode == 3 && !rng.chance(1, 2)) continue;
            Rational s(rng.range(1, bound), rng.range(1, bound));
            if (rng.chance(1, 4)) s = s * Rational(1L << rng.range(1, 8));
            z = z + s * d;
        }
    }
    return z;
}

}  // namespace

Point2 sample_region_point(const Region& r, Rng& rng, long bound) {
    require(!r.empty(), "unsupported_region", "cannot sample an empty region");
    for (int attempt = 0; attempt < 64; ++attempt) {
        const ConvexPiece& piece = r.pieces[rng.below(r.pieces.size())];
        // Early attempts probe faces with degenerate combinations; later ones
        // stay in the interior of the skeleton hull.
        int mode = attempt < 8 ? static_cast<int>(rng.below(4)) : 0;
        Point2 z = combine_skeleton(piece, rng, bound, mode);
        if (piece.contains(z)) return z;
    }
    fail("sampler_stuck", "region sampler found no member point in 64 attempts");
}

}  // namespace polyfold
