#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polyfold/geometry.hpp"
#include "polyfold/rational.hpp"
#include "polyfold/region.hpp"

namespace polyfold {

// grid: lattice over the coordinate box
// uniform: bounded random rationals
// heavy: uniform plus octave scaling (exact) / zone-pattern tails (double)
// guided: coverage only; per-cell backward witnesses on top of a heavy pass
enum class Scheme { grid, uniform, heavy, guided };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct SamplePlan {
    uint64_t seed = 1;
    size_t count = 1000;
    Scheme scheme = Scheme::uniform;
    long denominator_bound = 1000;
};

// splitmix64; good enough spread, trivially portable, stable across runs.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n <= 1 ? 0 : next() % n; }
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1))); }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool chance(uint64_t num, uint64_t den) { return below(den) < num; }

private:
    uint64_t state_;
};

// Axis-aligned rational window [x0,x1] x [y0,y1].
struct Window {
    Rational x0, x1, y0, y1;

    static Window around(const ValidatedPolygon& p, const Rational& margin);

    Rational cell_center_x(size_t i, size_t grid) const;
    Rational cell_center_y(size_t j, size_t grid) const;
    double cell_width(size_t grid) const;
    double cell_height(size_t grid) const;
    std::string str() const;
};

// num in [-B, B], den in [1, B].
Rational sample_rational(Rng& rng, long bound);
// Same, scaled by a random power of two a quarter of the time.
Rational sample_rational_heavy(Rng& rng, long bound);

// Exact domain sample; index only matters for the grid scheme.
std::vector<Rational> sample_domain(int arity, Rng& rng, const SamplePlan& plan, size_t index);

// Double-precision plane sample whose zone mixture is calibrated so that
// square-root preimages of every window cell stay likely: per coordinate,
// either t is uniform (reaching past the window) or t^2 is uniform over
// slightly more than the window's span, plus a small tangent-tail pattern.
std::pair<double, double> sample_plane_heavy(Rng& rng, const Window& w);

// Exact point of the region: random convex combination of the span points
// plus nonnegative multiples of the span directions, re-checked exactly;
// occasionally degenerates on purpose to probe faces. Throws
// "sampler_stuck" when the skeleton keeps landing outside.
Point2 sample_region_point(const Region& r, Rng& rng, long bound);

}  // namespace polyfold
