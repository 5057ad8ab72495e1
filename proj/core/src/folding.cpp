#include "polyfold/folding.hpp"
#include "polyfold/error.hpp"
#include "polyfold/roots.hpp"

#include <algorithm>

namespace polyfold {

SparsePoly build_psi(const ExtRational& c, const ExtRational& d) {
    require(c < d, "bad_interval", "interval is empty");
    require(c.is_finite() || d.is_finite(), "bad_interval",
            "folding over the whole line is excluded");
    SparsePoly x = SparsePoly::variable(2, 0);
    if (c.is_finite() && d.is_finite()) {
        SparsePoly cc = SparsePoly::constant(2, c.value());
        SparsePoly dd = SparsePoly::constant(2, d.value());
        return (x - cc) * (x - dd);
    }
    if (!c.is_finite()) return x - SparsePoly::constant(2, d.value());
    return SparsePoly::constant(2, c.value()) - x;
}

std::vector<size_t> select_family_prime(const std::vector<SparsePoly>& family,
                                        const ExtRational& c, const ExtRational& d) {
    require(c < d, "bad_interval", "interval is empty");
    std::vector<size_t> kept;
    for (size_t i = 0; i < family.size(); ++i) {
        const SparsePoly& g = family[i];
        require(g.arity() == 2, "bad_arity", "family members are two-variable polys");
        require(!g.is_zero(), "bad_functional", "zero family member");
        bool divisible_inside;
        if (g.total_degree() <= 1) {
            // a*x + b*y + e: divisible by (x - r) only when b == 0 and the
            // root -e/a lands inside the interval
            Rational a = g.coeff({1, 0, 0}), b = g.coeff({0, 1, 0}), e = g.coeff({0, 0, 0});
            divisible_inside = b.is_zero() && !a.is_zero() && strictly_between(c, -e / a, d);
        } else {
            // common root of the y-coefficient polys inside ]c,d[
            std::vector<DensePoly> coeff_polys;
            uint32_t ydeg = g.degree_in(1);
            for (uint32_t k = 0; k <= ydeg; ++k) coeff_polys.emplace_back();
            for (const auto& [e2, coef] : g.terms()) {
                auto& cp = coeff_polys[e2[1]];
                if (cp.size() <= e2[0]) cp.resize(e2[0] + 1, Rational(0));
                cp[e2[0]] = coef;
            }
            DensePoly common;
            for (auto& cp : coeff_polys) {
                cp = dense_trim(std::move(cp));
                if (cp.empty()) continue;
                common = common.empty() ? cp : dense_gcd(common, cp);
            }
            divisible_inside = dense_degree(common) >= 1 && has_root_in_open(common, c, d);
        }
        if (!divisible_inside) kept.push_back(i);
    }
    return kept;
}

SparsePoly FoldSpec::gamma_poly() const {
    return SparsePoly::constant(2, Rational(1)) + psi * phi;
}

SparsePoly FoldSpec::slice(const Rational& r) const {
    return slice_at_x(h, r);
}

CurtainSet CurtainSet::of(const BasicPolygonalSet& s) {
    require(is_curtain_certified(s), "not_certified_curtain",
            "set is not certified as a curtain over the x-axis");
    CurtainSet cs;
    const ValidatedPolygon& p = s.polygon();
    bool has_lower = false;
    for (size_t e = 0; e < p.edge_count(); ++e) {
        HalfPlaneConstraint hc{p.functionals()[e], s.edge_included()[e] == 0};
        require(hc.f.b.sign() >= 0, "not_certified_curtain",
                "curtain certificate forbids upper boundary edges");
        if (hc.f.b.is_zero()) {
            cs.verticals_.push_back(hc);
            // vertical a*x + c >= 0 bounds the projection on one side
            Rational r0 = -hc.f.c / hc.f.a;
            if (hc.f.a.sign() > 0) {
                if (cs.proj_lo_ < ExtRational(r0)) cs.proj_lo_ = ExtRational(r0);
            } else if (ExtRational(r0) < cs.proj_hi_) {
                cs.proj_hi_ = ExtRational(r0);
            }
        } else {
            has_lower = true;
        }
        cs.constraints_.push_back(std::move(hc));
    }
    require(has_lower, "fiber_line_unbounded", "no lower boundary: fibers are whole lines");
    for (size_t v = 0; v < p.vertex_count(); ++v)
        if (s.vertex_included()[v] == 0) cs.excluded_.push_back(p.data().vertices[v]);
    return cs;
}

std::optional<CurtainSet::Fiber> CurtainSet::fiber(const Rational& r) const {
    bool have = false;
    Rational best(0);
    bool closed = true;
    for (const auto& hc : constraints_) {
        if (hc.f.b.is_zero()) {
            int s = (hc.f.a * r + hc.f.c).sign();
            if (s < 0 || (s == 0 && hc.strict)) return std::nullopt;
            continue;
        }
        Rational bound = (-hc.f.c - hc.f.a * r) / hc.f.b;
        if (!have || bound > best) {
            best = bound;
            closed = !hc.strict;
            have = true;
        } else if (bound == best && hc.strict) {
            closed = false;
        }
    }
    if (!have) return std::nullopt;
    for (const auto& p : excluded_)
        if (p.x == r && p.y == best) closed = false;
    return Fiber{best, closed};
}

FoldData build_fold_stage(const BasicPolygonalSet& s, const ExtRational& c, const ExtRational& d,
                          SignVariant variant) {
    require(c < d, "bad_interval", "interval is empty");
    require(c.is_finite() || d.is_finite(), "bad_interval",
            "folding over the whole line is excluded");

    FoldData out;
    out.input = CurtainSet::of(s);
    out.source = s;
    out.input_region = region_of(s);

    FoldSpec& spec = out.spec;
    spec.c = c;
    spec.d = d;
    spec.variant = variant;
    for (const auto& f : s.polygon().functionals()) spec.family.push_back(f.to_poly());
    spec.family_prime = select_family_prime(spec.family, c, d);

    spec.phi = SparsePoly::constant(2, Rational(1));
    for (size_t i : spec.family_prime) spec.phi = spec.phi * spec.family[i];

    if (variant == SignVariant::paper_step4) {
        require(d.is_pos_inf() && c.is_finite(), "bad_interval",
                "the printed sign variant applies to half-open upward intervals only");
        spec.psi = SparsePoly::variable(2, 0) - SparsePoly::constant(2, c.value());
    } else {
        spec.psi = build_psi(c, d);
    }

    SparsePoly gamma = SparsePoly::constant(2, Rational(1)) + spec.psi * spec.phi;
    spec.h = SparsePoly::variable(2, 1) * gamma * gamma;

    out.declared_image = region_union(region_of(s),
                                      strip_region(c, d, out.input.vertical_constraints()));
    return out;
}

namespace {

// Exact grid along the fiber: origin plus 20 octaves of offsets 2^(k-10),
// 50 per octave.
std::vector<Rational> fiber_grid(const Rational& origin) {
    std::vector<Rational> ts{origin};
    for (int k = 0; k < 20; ++k) {
        Rational base = pow(Rational(2), static_cast<unsigned>(k));
        Rational scale = Rational(1) / pow(Rational(2), 10);
        for (int i = 0; i < 50; ++i) {
            Rational offset = base * scale * (Rational(1) + Rational(i, 50));
            ts.push_back(origin + offset);
        }
    }
    return ts;
}

Rational eval1(const SparsePoly& p, const Rational& t) { return p.eval({t}); }

} // namespace

FiberCertificate certify_fiber(const FoldSpec& spec, const CurtainSet& curtain, const Rational& r) {
    auto fib = curtain.fiber(r);
    require(fib.has_value(), "empty_fiber", "abscissa is outside the projection");

    FiberCertificate cert;
    cert.r = r;
    cert.origin = fib->origin;
    cert.origin_closed = fib->closed;
    bool inside = strictly_between(spec.c, r, spec.d);
    cert.tag = inside ? 2 : 1;

    SparsePoly hr = slice_at_x(spec.h, r);
    SparsePoly gr = slice_at_x(spec.gamma_poly(), r);
    const Rational& s0 = cert.origin;
    auto grid = fiber_grid(s0);

    auto add = [&](const std::string& name, bool ok, std::string note = "") {
        cert.checks.push_back({name, ok, std::move(note)});
    };

    if (cert.tag == 1) {
        add("origin_fixed", eval1(hr, s0) == s0);
        bool dominated = true;
        for (const auto& t : grid)
            if (eval1(hr, t) < t) {
                dominated = false;
                break;
            }
        add("grid_dominates", dominated);
        auto coeffs = dense_coeffs(hr);
        bool lead_ok = !coeffs.empty() && coeffs.back().sign() > 0 && (coeffs.size() - 1) % 2 == 1;
        add("odd_degree_positive_lead", lead_ok);
    } else {
        add("gamma_origin_one", eval1(gr, s0) == Rational(1));
        auto gc = dense_coeffs(gr);
        if (gc.size() <= 1)
            fail("contract_violation", "gamma is constant on a fiber inside the interval");
        bool lead_neg = gc.back().sign() < 0;
        add("gamma_leading_negative", lead_neg);

        bool nonneg = true;
        for (const auto& t : grid)
            if (eval1(hr, t).sign() < 0) {
                nonneg = false;
                break;
            }
        add("h_nonnegative_on_grid", nonneg);

        if (lead_neg) {
            // hunt a sign change of gamma above the fiber origin
            Rational lo = s0, hi(0);
            bool found = false;
            Rational step(1);
            Rational probe_base = s0 > Rational(0) ? s0 : Rational(0);
            for (int k = 0; k <= 512 && !found; ++k) {
                Rational t = probe_base + step;
                int sg = eval1(gr, t).sign();
                if (sg < 0) {
                    hi = t;
                    found = true;
                } else if (sg > 0) {
                    if (t > lo) lo = t;
                }
                // exact zero: remember and keep walking for a sign change
                if (sg == 0) cert.exact_root = t;
                step *= Rational(2);
            }
            if (cert.exact_root && (!found || *cert.exact_root < hi)) {
                // verify it really is a root strictly above the origin
                bool ok = eval1(gr, *cert.exact_root).is_zero() && *cert.exact_root > s0;
                add("root_enclosed", ok, "exact root");
                cert.bracket = {{*cert.exact_root, *cert.exact_root}};
            } else if (!found) {
                add("root_enclosed", false, "no sign change found");
            } else {
                Rational width_target = Rational(1) / pow(Rational(2), 40);
                // invariant: gamma(lo) > 0 (gamma(s0) = 1), gamma(hi) < 0
                while (hi - lo > width_target || lo == s0) {
                    Rational mid = (lo + hi) / Rational(2);
                    int sg = eval1(gr, mid).sign();
                    if (sg > 0) {
                        lo = mid;
                    } else if (sg < 0) {
                        hi = mid;
                    } else {
                        cert.exact_root = mid;
                        break;
                    }
                }
                if (cert.exact_root) {
                    add("root_enclosed", *cert.exact_root > s0, "exact root");
                    cert.bracket = {{*cert.exact_root, *cert.exact_root}};
                } else {
                    bool ok = lo > s0 && eval1(gr, lo).sign() > 0 && eval1(gr, hi).sign() < 0 &&
                              hi - lo <= width_target;
                    add("root_enclosed", ok);
                    cert.bracket = {{lo, hi}};
                }
            }
        } else {
            add("root_enclosed", false, "wrong leading sign, no decay to -inf");
        }
    }

    cert.valid = std::all_of(cert.checks.begin(), cert.checks.end(),
                             [](const CheckItem& c) { return c.ok; });
    return cert;
}

} // namespace polyfold
