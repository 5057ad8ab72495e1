#include "polyfold/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "polyfold/error.hpp"

namespace polyfold {

namespace {

std::string point_str(const Point2& z) { return "(" + z.x.str() + ", " + z.y.str() + ")"; }

std::string coords_str(const std::vector<Rational>& z) {
    std::string s = "(";
    for (size_t i = 0; i < z.size(); ++i) s += (i ? ", " : "") + z[i].str();
    return s + ")";
}

}  // namespace

Region target_region(const StagedMap& m) {
    require(m.target.has_value(), "no_target", "map carries no target polygon");
    if (m.interior_map) return strict_interior(*m.target);
    return region_of(BasicPolygonalSet::closed(*m.target));
}

ContainmentResult check_containment(const StagedMap& m, const Region& target,
                                    const SamplePlan& plan) {
    require(m.predicted_degree() <= kExactChainDegreeLimit, "degree_cap_exceeded",
            "predicted degree " + std::to_string(m.predicted_degree()) +
                " is past the exact end-to-end limit " + std::to_string(kExactChainDegreeLimit) +
                "; use the per-stage checks");
    ContainmentResult res;
    Rng rng(plan.seed);
    for (size_t i = 0; i < plan.count; ++i) {
        std::vector<Rational> z = sample_domain(m.domain_arity, rng, plan, i);
        if (m.interior_map && m.domain_arity == 3) {
            if (z[2].sign() < 0) z[2] = -z[2];
            if (z[2].is_zero()) z[2] = Rational(1L, plan.denominator_bound);
        }
        std::vector<Rational> img = m.eval(z);
        ++res.samples;
        if (!target.contains(Point2{img[0], img[1]})) {
            ++res.failures;
            if (res.first_failure.empty())
                res.first_failure =
                    coords_str(z) + " -> " + point_str(Point2{img[0], img[1]}) + " left the target";
        }
    }
    return res;
}

StagewiseResult check_stagewise(const StagedMap& m, const SamplePlan& plan) {
    StagewiseResult res;
    Rng rng(plan.seed);
    for (size_t k = 0; k < m.stages.size(); ++k) {
        const Stage& stage = m.stages[k];
        if (const auto* l = std::get_if<LiftStage>(&stage)) {
            StagewiseResult sub = check_stagewise(*l->inner, plan);
            res.stages_checked += sub.stages_checked;
            res.samples += sub.samples;
            res.failures += sub.failures;
            if (res.first_failure.empty()) res.first_failure = sub.first_failure;
            continue;
        }
        if (!m.expected_after[k].has_value()) continue;
        if (stage_input_arity(stage) != 2) continue;
        const Region& out_region = *m.expected_after[k];
        const std::optional<Region>* prev = k == 0 ? nullptr : &m.expected_after[k - 1];
        if (k > 0 && !prev->has_value()) continue;

        ++res.stages_checked;
        for (size_t i = 0; i < plan.count; ++i) {
            Point2 z;
            if (k == 0) {
                std::vector<Rational> dz = sample_domain(2, rng, plan, i);
                z = Point2{dz[0], dz[1]};
            } else {
                z = sample_region_point(**prev, rng, plan.denominator_bound);
            }
            std::vector<Rational> wv = apply_stage(stage, {z.x, z.y});
            Point2 w{wv[0], wv[1]};
            ++res.samples;
            if (!out_region.contains(w)) {
                ++res.failures;
                if (res.first_failure.empty())
                    res.first_failure = "stage " + std::to_string(k) + ": " + point_str(z) +
                                        " -> " + point_str(w) + " left the declared image";
            }
        }
    }
    return res;
}

namespace {

Rational unit_frac(Rng& rng) { return Rational(rng.range(1, 63), 64L); }

std::optional<Rational> between_open(const ExtRational& lo, const ExtRational& hi, Rng& rng) {
    if (lo.is_finite() && hi.is_finite()) {
        if (!(lo < hi)) return std::nullopt;
        return lo.value() + (hi.value() - lo.value()) * unit_frac(rng);
    }
    if (lo.is_finite() && hi.is_pos_inf())
        return lo.value() + Rational(rng.range(1, 40), rng.range(1, 4));
    if (lo.is_neg_inf() && hi.is_finite())
        return hi.value() - Rational(rng.range(1, 40), rng.range(1, 4));
    if (lo.is_neg_inf() && hi.is_pos_inf()) return Rational(rng.range(-20, 20), rng.range(1, 3));
    return std::nullopt;
}

std::vector<Rational> pick_fibers(const FoldData& fd, size_t want, Rng& rng) {
    const CurtainSet& cs = fd.input;
    const ExtRational& c = fd.spec.c;
    const ExtRational& d = fd.spec.d;
    ExtRational inside_lo = c < cs.proj_lo() ? cs.proj_lo() : c;
    ExtRational inside_hi = d < cs.proj_hi() ? d : cs.proj_hi();

    std::vector<Rational> picks;
    auto push_if = [&](const Rational& r) {
        if (picks.size() < want && cs.in_projection(r)) picks.push_back(r);
    };
    if (c.is_finite()) push_if(c.value());
    if (d.is_finite()) push_if(d.value());

    size_t guard = 0;
    while (picks.size() < want && guard++ < want * 60) {
        std::optional<Rational> r;
        switch (rng.below(3)) {
            case 0: r = between_open(inside_lo, inside_hi, rng); break;
            case 1: r = between_open(cs.proj_lo(), c, rng); break;
            default: r = between_open(d, cs.proj_hi(), rng); break;
        }
        if (!r) r = between_open(cs.proj_lo(), cs.proj_hi(), rng);
        if (r) push_if(*r);
    }
    return picks;
}

void collect_folds(const StagedMap& m, const std::string& prefix, size_t fibers_per_fold,
                   uint64_t seed, std::vector<FoldCertSummary>& out) {
    for (size_t k = 0; k < m.stages.size(); ++k) {
        if (const auto* l = std::get_if<LiftStage>(&m.stages[k])) {
            collect_folds(*l->inner, prefix + std::to_string(k) + ":lift:", fibers_per_fold,
                          seed * 0x100000001B3ULL + 17, out);
            continue;
        }
        const auto* f = std::get_if<FoldStage>(&m.stages[k]);
        if (!f) continue;
        FoldCertSummary sum;
        sum.path = prefix + std::to_string(k);
        Rng rng(seed ^ (0xCBF29CE484222325ULL + 0x9E3779B9ULL * out.size()));
        for (const Rational& r : pick_fibers(f->data, fibers_per_fold, rng)) {
            FiberCertificate cert = certify_fiber(f->data.spec, f->data.input, r);
            ++sum.fibers;
            if (cert.valid) ++sum.valid;
            sum.certificates.push_back(std::move(cert));
        }
        out.push_back(std::move(sum));
    }
}

}  // namespace

std::vector<FoldCertSummary> certify_map_folds(const StagedMap& m, size_t fibers_per_fold,
                                               uint64_t seed) {
    std::vector<FoldCertSummary> out;
    collect_folds(m, "", fibers_per_fold, seed, out);
    return out;
}

namespace {

// Witness walks run in GMP floating point: deep stage chains push doubles
// past their exponent range, and the wells of h around gamma's zero can be
// narrower than double epsilon. Precision escalates when a forward recheck of
// the witness misses its cell.
using BF = mpf_class;

BF bf_rat(const Rational& q, unsigned prec) { return BF(q.raw(), prec); }

BF bf_tiny(unsigned prec) { return BF(std::ldexp(1.0, -static_cast<int>(prec) / 2), prec); }

std::vector<BF> dense_slice_bf(const SparsePoly& h, const BF& r, unsigned prec) {
    unsigned mdeg = 0, fdeg = 0;
    for (const auto& [e, q] : h.terms()) {
        mdeg = std::max(mdeg, e[0]);
        fdeg = std::max(fdeg, e[1]);
    }
    std::vector<BF> rp;
    rp.emplace_back(1, prec);
    for (unsigned k = 1; k <= mdeg; ++k) {
        BF v(0, prec);
        v = rp.back() * r;
        rp.push_back(v);
    }
    std::vector<BF> c(fdeg + 1, BF(0, prec));
    for (const auto& [e, q] : h.terms()) c[e[1]] += bf_rat(q, prec) * rp[e[0]];
    return c;
}

BF horner_bf(const std::vector<BF>& c, const BF& t, unsigned prec) {
    BF acc(0, prec);
    for (size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
}

BF sparse_eval_bf(const SparsePoly& p, const BF& x, const BF& y, unsigned prec) {
    unsigned mx = 0, my = 0;
    for (const auto& [e, q] : p.terms()) {
        mx = std::max(mx, e[0]);
        my = std::max(my, e[1]);
    }
    std::vector<BF> xp, yp;
    xp.emplace_back(1, prec);
    yp.emplace_back(1, prec);
    for (unsigned k = 1; k <= mx; ++k) {
        BF v(0, prec);
        v = xp.back() * x;
        xp.push_back(v);
    }
    for (unsigned k = 1; k <= my; ++k) {
        BF v(0, prec);
        v = yp.back() * y;
        yp.push_back(v);
    }
    BF acc(0, prec);
    for (const auto& [e, q] : p.terms()) acc += bf_rat(q, prec) * xp[e[0]] * yp[e[1]];
    return acc;
}

using GammaCache = std::map<const FoldData*, SparsePoly>;

const SparsePoly& gamma_of(const FoldData& fd, GammaCache& cache) {
    auto it = cache.find(&fd);
    if (it == cache.end()) it = cache.emplace(&fd, fd.spec.gamma_poly()).first;
    return it->second;
}

template <typename Fn>
BF bisect_root_bf(const Fn& fn, BF lo, BF hi, bool lo_neg, unsigned prec) {
    BF tol(std::ldexp(1.0, -static_cast<int>(prec) + 16), prec);
    for (unsigned it = 0; it < prec + 64; ++it) {
        BF width(0, prec);
        width = hi - lo;
        BF scale(1, prec);
        if (abs(hi) > scale) scale = abs(hi);
        if (width <= tol * scale) break;
        BF mid(0, prec);
        mid = (lo + hi) / 2;
        BF fm = fn(mid);
        if (fm == 0) return mid;
        if ((fm < 0) == lo_neg)
            lo = mid;
        else
            hi = mid;
    }
    BF out(0, prec);
    out = (lo + hi) / 2;
    return out;
}

std::optional<BF> invert_fold_stage_bf(const FoldData& fd, const BF& r, const BF& s,
                                       unsigned prec, GammaCache& cache) {
    bool have = false;
    BF o(0, prec);
    BF tiny = bf_tiny(prec);
    for (const auto& hc : fd.input.constraints()) {
        BF a = bf_rat(hc.f.a, prec), b = bf_rat(hc.f.b, prec), cc = bf_rat(hc.f.c, prec);
        if (b > 0) {
            BF t(0, prec);
            t = (-cc - a * r) / b;
            if (!have || t > o) o = t;
            have = true;
        } else if (b == 0) {
            BF v(0, prec);
            v = a * r + cc;
            BF slack(0, prec);
            slack = (abs(a * r) + abs(cc) + 1) * tiny;
            if (v < -slack) return std::nullopt;
        }
    }
    if (!have) return std::nullopt;

    std::vector<BF> hcf = dense_slice_bf(fd.spec.h, r, prec);
    auto F = [&](const BF& t) {
        BF v(0, prec);
        v = horner_bf(hcf, t, prec) - s;
        return v;
    };

    BF f0 = F(o);
    BF scale0(0, prec);
    scale0 = abs(s) + abs(o) + 1;
    if (abs(f0) <= tiny * scale0) return o;
    if (s < 0) return std::nullopt;

    // On inside fibers gamma falls monotonically from 1 through zero, and the
    // well of h = t * gamma^2 around that zero is the only place strip values
    // live. It can be far too narrow for any blind scan of h, so bracket the
    // gamma root first.
    std::vector<BF> gc = dense_slice_bf(gamma_of(fd, cache), r, prec);
    auto G = [&](const BF& t) { return horner_bf(gc, t, prec); };

    BF base(1, prec);
    if (abs(o) > base) base = abs(o);

    bool found_star = false;
    BF tstar(0, prec);
    BF prev_t = o;
    BF prev_g = G(o);
    for (int j = 1; j <= 400; ++j) {
        BF t(0, prec);
        t = o + base * BF(std::exp2(static_cast<double>(j) / 8.0) - 1.0, prec);
        BF g = G(t);
        if (g <= 0) {
            tstar = bisect_root_bf(G, prev_t, t, false, prec);
            found_star = true;
            break;
        }
        if (g > prev_g && g > 4) break;  // gamma rising, no zero ahead
        prev_t = t;
        prev_g = g;
    }

    if (!found_star) {
        // no well: h never drops below its value at the fiber origin
        if (f0 > 0) return std::nullopt;
        BF pt = o;
        for (int j = 1; j <= 400; ++j) {
            BF t(0, prec);
            t = o + base * BF(std::exp2(static_cast<double>(j) / 8.0) - 1.0, prec);
            BF f = F(t);
            if (f == 0) return t;
            if (f > 0) return bisect_root_bf(F, pt, t, true, prec);
            pt = t;
        }
        return std::nullopt;
    }

    if (f0 > 0) {
        // strip value below the fiber origin image: descend into the well
        if (F(tstar) > 0) return std::nullopt;
        return bisect_root_bf(F, o, tstar, false, prec);
    }
    // value above the origin image: climb the rising branch past the well
    if (F(tstar) >= 0) return tstar;
    BF pt = tstar;
    for (int j = 1; j <= 400; ++j) {
        BF t(0, prec);
        t = tstar + base * BF(std::exp2(static_cast<double>(j) / 8.0) - 1.0, prec);
        BF f = F(t);
        if (f == 0) return t;
        if (f > 0) return bisect_root_bf(F, pt, t, true, prec);
        pt = t;
    }
    return std::nullopt;
}

std::optional<std::pair<BF, BF>> invert_open_upper_bf(const BF& u, const BF& v, unsigned prec) {
    if (v <= 0) return std::nullopt;
    BF rv(0, prec);
    rv = sqrt(v);
    if (u == 0) {
        BF y(0, prec);
        y = 1 / rv;
        return std::make_pair(rv, y);
    }
    // Solve x*u = p*(1+p) with p = sb*sqrt(v - x^2); any root yields an exact
    // preimage since y := u/p then reproduces p = x*y - 1. The two branch
    // ends carry opposite signs of F, so a crossing always exists.
    for (int sbi = 0; sbi < 2; ++sbi) {
        BF sb(sbi == 0 ? 1 : -1, prec);
        auto F = [&](const BF& x) {
            BF d(0, prec);
            d = v - x * x;
            if (d < 0) d = 0;
            BF p(0, prec);
            p = sb * sqrt(d);
            BF out(0, prec);
            out = x * u - p * (1 + p);
            return out;
        };
        const int K = 512;
        BF span(0, prec);
        span = rv * BF(0.9999999, prec);
        BF prev_x(0, prec);
        prev_x = -span;
        BF prev_f = F(prev_x);
        for (int i = 1; i <= K; ++i) {
            BF x(0, prec);
            x = -span + 2 * span * BF(static_cast<double>(i) / K, prec);
            BF f = F(x);
            if ((f < 0) != (prev_f < 0) || f == 0) {
                BF root = f == 0 ? x : bisect_root_bf(F, prev_x, x, prev_f < 0, prec);
                BF d(0, prec);
                d = v - root * root;
                if (d < 0) d = 0;
                BF p(0, prec);
                p = sb * sqrt(d);
                if (p != 0) {
                    BF y(0, prec);
                    y = u / p;
                    return std::make_pair(root, y);
                }
            }
            prev_x = x;
            prev_f = f;
        }
    }
    return std::nullopt;
}

std::optional<std::vector<BF>> backward_witness_bf(const StagedMap& m, const BF& tx, const BF& ty,
                                                   unsigned prec, GammaCache& cache) {
    std::vector<BF> cur = {tx, ty};
    BF tiny = bf_tiny(prec);
    for (size_t k = m.stages.size(); k-- > 0;) {
        const Stage& s = m.stages[k];
        if (const auto* a = std::get_if<AffineStage>(&s)) {
            AffineMap2 inv = a->map.inverse();
            BF x(0, prec), y(0, prec);
            x = bf_rat(inv.m00, prec) * cur[0] + bf_rat(inv.m01, prec) * cur[1] +
                bf_rat(inv.t.x, prec);
            y = bf_rat(inv.m10, prec) * cur[0] + bf_rat(inv.m11, prec) * cur[1] +
                bf_rat(inv.t.y, prec);
            cur = {x, y};
            continue;
        }
        if (const auto* f = std::get_if<FoldStage>(&s)) {
            std::optional<BF> t = invert_fold_stage_bf(f->data, cur[0], cur[1], prec, cache);
            if (!t) return std::nullopt;
            cur = {cur[0], *t};
            continue;
        }
        if (const auto* l = std::get_if<LiftStage>(&s)) {
            const StagedMap& inner = *l->inner;
            if (!inner.target.has_value()) return std::nullopt;
            bool first = true;
            BF tstar(0, prec);
            for (const auto& fl : inner.target->functionals()) {
                Rational den = fl.a + fl.b;
                if (!(den.sign() > 0)) return std::nullopt;
                BF val(0, prec);
                val = (bf_rat(fl.a, prec) * cur[0] + bf_rat(fl.b, prec) * cur[1] +
                       bf_rat(fl.c, prec)) /
                      bf_rat(den, prec);
                if (first || val < tstar) tstar = val;
                first = false;
            }
            if (first || !(tstar > 0)) return std::nullopt;
            BF t(0, prec);
            t = tstar / 2;
            BF ix(0, prec), iy(0, prec);
            ix = cur[0] - t;
            iy = cur[1] - t;
            std::optional<std::vector<BF>> sub = backward_witness_bf(inner, ix, iy, prec, cache);
            if (!sub) return std::nullopt;
            cur = {(*sub)[0], (*sub)[1], t};
            continue;
        }
        const auto& b = std::get<BaseStage>(s);
        switch (b.kind) {
            case BaseKind::y_square: {
                if (cur[1] < -tiny) return std::nullopt;
                BF yy(0, prec);
                if (cur[1] > 0) yy = cur[1];
                BF ry(0, prec);
                ry = sqrt(yy);
                cur = {cur[0], ry};
                break;
            }
            case BaseKind::xy_square: {
                if (cur[0] < -tiny || cur[1] < -tiny) return std::nullopt;
                BF xx(0, prec), yy(0, prec);
                if (cur[0] > 0) xx = cur[0];
                if (cur[1] > 0) yy = cur[1];
                BF rx(0, prec), ry(0, prec);
                rx = sqrt(xx);
                ry = sqrt(yy);
                cur = {rx, ry};
                break;
            }
            case BaseKind::open_upper: {
                std::optional<std::pair<BF, BF>> pr = invert_open_upper_bf(cur[0], cur[1], prec);
                if (!pr) return std::nullopt;
                cur = {pr->first, pr->second};
                break;
            }
            case BaseKind::open_upper_factor3: {
                std::optional<std::pair<BF, BF>> pr = invert_open_upper_bf(cur[1], cur[2], prec);
                if (!pr) return std::nullopt;
                cur = {cur[0], pr->first, pr->second};
                break;
            }
        }
    }
    return cur;
}

std::vector<BF> forward_eval_bf(const StagedMap& m, const std::vector<BF>& z, unsigned prec) {
    std::vector<BF> cur = z;
    for (const auto& s : m.stages) {
        if (const auto* b = std::get_if<BaseStage>(&s)) {
            switch (b->kind) {
                case BaseKind::y_square: {
                    BF y2(0, prec);
                    y2 = cur[1] * cur[1];
                    cur = {cur[0], y2};
                    break;
                }
                case BaseKind::xy_square: {
                    BF x2(0, prec), y2(0, prec);
                    x2 = cur[0] * cur[0];
                    y2 = cur[1] * cur[1];
                    cur = {x2, y2};
                    break;
                }
                case BaseKind::open_upper: {
                    BF p(0, prec), u(0, prec), v(0, prec);
                    p = cur[0] * cur[1] - 1;
                    u = cur[1] * p;
                    v = p * p + cur[0] * cur[0];
                    cur = {u, v};
                    break;
                }
                case BaseKind::open_upper_factor3: {
                    BF p(0, prec), u(0, prec), v(0, prec);
                    p = cur[1] * cur[2] - 1;
                    u = cur[2] * p;
                    v = p * p + cur[1] * cur[1];
                    cur = {cur[0], u, v};
                    break;
                }
            }
            continue;
        }
        if (const auto* a = std::get_if<AffineStage>(&s)) {
            BF x(0, prec), y(0, prec);
            x = bf_rat(a->map.m00, prec) * cur[0] + bf_rat(a->map.m01, prec) * cur[1] +
                bf_rat(a->map.t.x, prec);
            y = bf_rat(a->map.m10, prec) * cur[0] + bf_rat(a->map.m11, prec) * cur[1] +
                bf_rat(a->map.t.y, prec);
            cur = {x, y};
            continue;
        }
        if (const auto* f = std::get_if<FoldStage>(&s)) {
            BF h = sparse_eval_bf(f->data.spec.h, cur[0], cur[1], prec);
            cur = {cur[0], h};
            continue;
        }
        const auto& lift = std::get<LiftStage>(s);
        std::vector<BF> inner = forward_eval_bf(*lift.inner, {cur[0], cur[1]}, prec);
        BF u(0, prec), v(0, prec);
        u = inner[0] + cur[2];
        v = inner[1] + cur[2];
        cur = {u, v};
    }
    return cur;
}

}  // namespace

std::optional<std::vector<double>> backward_witness(const StagedMap& m, double tx, double ty) {
    GammaCache cache;
    const unsigned prec = 192;
    BF a(tx, prec), b(ty, prec);
    std::optional<std::vector<BF>> wit = backward_witness_bf(m, a, b, prec, cache);
    if (!wit) return std::nullopt;
    std::vector<double> out;
    out.reserve(wit->size());
    for (const BF& v : *wit) out.push_back(v.get_d());
    return out;
}

CoverageResult check_coverage(const StagedMap& m, const Region& target, const Window& w,
                              size_t grid, const SamplePlan& plan) {
    require(grid >= 2, "bad_plan", "coverage grid too small");
    CoverageResult res;
    res.window = w;
    res.grid = grid;

    const double x0d = w.x0.to_double(), y0d = w.y0.to_double();
    const double cw = w.cell_width(grid), ch = w.cell_height(grid);
    auto locate = [&](double x, double y) -> std::optional<std::pair<size_t, size_t>> {
        if (!std::isfinite(x) || !std::isfinite(y)) return std::nullopt;
        double fx = (x - x0d) / cw, fy = (y - y0d) / ch;
        if (!(fx >= 0.0) || !(fy >= 0.0)) return std::nullopt;
        size_t i = static_cast<size_t>(fx), j = static_cast<size_t>(fy);
        if (i >= grid || j >= grid) return std::nullopt;
        return std::make_pair(i, j);
    };

    std::vector<char> is_target(grid * grid, 0), hit(grid * grid, 0);
    for (size_t i = 0; i < grid; ++i) {
        Rational cx = w.cell_center_x(i, grid);
        for (size_t j = 0; j < grid; ++j) {
            Point2 cc{cx, w.cell_center_y(j, grid)};
            if (target.contains(cc)) {
                is_target[i * grid + j] = 1;
                ++res.target_cells;
            }
        }
    }

    Rng rng(plan.seed);
    res.forward_samples = plan.count;
    for (size_t n = 0; n < plan.count; ++n) {
        std::vector<double> z;
        if (plan.scheme == Scheme::uniform) {
            double x = w.x0.to_double() - 1.0 +
                       rng.unit() * (w.x1.to_double() - w.x0.to_double() + 2.0);
            double y = w.y0.to_double() - 1.0 +
                       rng.unit() * (w.y1.to_double() - w.y0.to_double() + 2.0);
            z = {x, y};
        } else {
            auto pr = sample_plane_heavy(rng, w);
            z = {pr.first, pr.second};
        }
        if (m.domain_arity == 3) z.push_back(sample_plane_heavy(rng, w).first);
        std::vector<double> img = m.eval_double(z);
        auto cell = locate(img[0], img[1]);
        if (!cell) continue;
        size_t idx = cell->first * grid + cell->second;
        if (is_target[idx]) hit[idx] = 1;
    }

    if (plan.scheme == Scheme::guided) {
        GammaCache cache;
        const bool exact_ok = m.predicted_degree() <= kExactChainDegreeLimit;
        Rational dx = (w.x1 - w.x0) / Rational(static_cast<long long>(grid));
        Rational dy = (w.y1 - w.y0) / Rational(static_cast<long long>(grid));
        for (size_t i = 0; i < grid; ++i)
            for (size_t j = 0; j < grid; ++j) {
                size_t idx = i * grid + j;
                if (!is_target[idx] || hit[idx]) continue;
                ++res.walk_attempts;
                Rational cxq = w.cell_center_x(i, grid), cyq = w.cell_center_y(j, grid);
                Rational xlo = w.x0 + Rational(static_cast<long long>(i)) * dx;
                Rational ylo = w.y0 + Rational(static_cast<long long>(j)) * dy;
                Rational xhi = xlo + dx, yhi = ylo + dy;
                bool landed = false;
                std::optional<std::vector<BF>> last_wit;
                for (unsigned prec : {192u, 768u}) {
                    std::optional<std::vector<BF>> wit =
                        backward_witness_bf(m, bf_rat(cxq, prec), bf_rat(cyq, prec), prec, cache);
                    if (!wit) continue;
                    last_wit = wit;
                    std::vector<BF> img = forward_eval_bf(m, *wit, prec);
                    if (img[0] >= bf_rat(xlo, prec) && img[0] < bf_rat(xhi, prec) &&
                        img[1] >= bf_rat(ylo, prec) && img[1] < bf_rat(yhi, prec)) {
                        landed = true;
                        break;
                    }
                }
                if (!landed && exact_ok && last_wit) {
                    // big-float witnesses convert to exact rationals, so short
                    // chains get an exact forward check before giving up
                    std::vector<Rational> zq;
                    zq.reserve(last_wit->size());
                    for (const BF& v : *last_wit) zq.push_back(Rational(mpq_class(v)));
                    std::vector<Rational> img = m.eval(zq);
                    landed = img[0] >= xlo && img[0] < xhi && img[1] >= ylo && img[1] < yhi;
                }
                if (landed) {
                    hit[idx] = 1;
                    ++res.walk_hits;
                }
            }
    }

    const double near = 1.5 * std::hypot(cw, ch);
    for (size_t i = 0; i < grid; ++i)
        for (size_t j = 0; j < grid; ++j) {
            size_t idx = i * grid + j;
            if (!is_target[idx]) continue;
            if (hit[idx]) {
                ++res.hit_cells;
                continue;
            }
            double cx = w.cell_center_x(i, grid).to_double();
            double cy = w.cell_center_y(j, grid).to_double();
            if (target.boundary_distance(cx, cy) <= near) ++res.near_boundary_misses;
            if (res.miss_centers.size() < 256) res.miss_centers.emplace_back(cx, cy);
        }
    return res;
}

CrossCheckResult cross_check_expansion(const StagedMap& m,
                                       const std::vector<SparsePoly>& expanded,
                                       const SamplePlan& plan) {
    require(expanded.size() == 2, "arity_mismatch", "expanded map must have two coordinates");
    CrossCheckResult res;
    Rng rng(plan.seed);
    for (size_t i = 0; i < plan.count; ++i) {
        std::vector<Rational> z = sample_domain(m.domain_arity, rng, plan, i);
        std::vector<Rational> staged = m.eval(z);
        Rational ex = expanded[0].eval(z), ey = expanded[1].eval(z);
        ++res.samples;
        if (staged[0] != ex || staged[1] != ey) {
            ++res.mismatches;
            if (res.first_mismatch.empty())
                res.first_mismatch = coords_str(z) + ": staged " +
                                     point_str(Point2{staged[0], staged[1]}) + " vs expanded " +
                                     point_str(Point2{ex, ey});
        }
    }
    return res;
}

}  // namespace polyfold
