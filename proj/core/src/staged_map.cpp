#include "polyfold/staged_map.hpp"

#include <string>

#include "polyfold/error.hpp"

namespace polyfold {

const char* base_kind_name(BaseKind k) {
    switch (k) {
        case BaseKind::y_square: return "y_square";
        case BaseKind::xy_square: return "xy_square";
        case BaseKind::open_upper: return "open_upper";
        case BaseKind::open_upper_factor3: return "open_upper_factor3";
    }
    fail("bad_base_kind", "unknown base kind");
}

BaseKind base_kind_from_name(const std::string& name) {
    if (name == "y_square") return BaseKind::y_square;
    if (name == "xy_square") return BaseKind::xy_square;
    if (name == "open_upper") return BaseKind::open_upper;
    if (name == "open_upper_factor3") return BaseKind::open_upper_factor3;
    fail("bad_base_kind", "unknown base kind: " + name);
}

int stage_input_arity(const Stage& s) {
    if (std::holds_alternative<BaseStage>(s))
        return std::get<BaseStage>(s).kind == BaseKind::open_upper_factor3 ? 3 : 2;
    if (std::holds_alternative<LiftStage>(s)) return 3;
    return 2;
}

int stage_output_arity(const Stage& s) {
    if (std::holds_alternative<BaseStage>(s))
        return std::get<BaseStage>(s).kind == BaseKind::open_upper_factor3 ? 3 : 2;
    return 2;
}

std::pair<SparsePoly, SparsePoly> open_halfplane_factor() {
    SparsePoly x = SparsePoly::variable(2, 0);
    SparsePoly y = SparsePoly::variable(2, 1);
    SparsePoly p = x * y - SparsePoly::constant(2, Rational(1));
    return {y * p, p * p + x * x};
}

namespace {

void check_arity(size_t got, int want, const char* what) {
    require(got == static_cast<size_t>(want), "arity_mismatch",
            std::string(what) + ": expected " + std::to_string(want) +
                " coordinates, got " + std::to_string(got));
}

std::pair<Rational, Rational> open_upper_eval(const Rational& x, const Rational& y) {
    Rational p = x * y - Rational(1);
    return {y * p, p * p + x * x};
}

std::pair<double, double> open_upper_eval_d(double x, double y) {
    double p = x * y - 1.0;
    return {y * p, p * p + x * x};
}

}  // namespace

std::vector<Rational> apply_stage(const Stage& s, const std::vector<Rational>& z) {
    check_arity(z.size(), stage_input_arity(s), "stage input");
    if (const auto* b = std::get_if<BaseStage>(&s)) {
        switch (b->kind) {
            case BaseKind::y_square:
                return {z[0], z[1] * z[1]};
            case BaseKind::xy_square:
                return {z[0] * z[0], z[1] * z[1]};
            case BaseKind::open_upper: {
                auto [u, v] = open_upper_eval(z[0], z[1]);
                return {u, v};
            }
            case BaseKind::open_upper_factor3: {
                auto [u, v] = open_upper_eval(z[1], z[2]);
                return {z[0], u, v};
            }
        }
    }
    if (const auto* a = std::get_if<AffineStage>(&s)) {
        Point2 w = a->map.apply({z[0], z[1]});
        return {w.x, w.y};
    }
    if (const auto* f = std::get_if<FoldStage>(&s)) {
        Point2 w = f->data.spec.apply({z[0], z[1]});
        return {w.x, w.y};
    }
    const auto& lift = std::get<LiftStage>(s);
    std::vector<Rational> inner = lift.inner->eval({z[0], z[1]});
    return {inner[0] + z[2], inner[1] + z[2]};
}

std::vector<double> apply_stage_double(const Stage& s, const std::vector<double>& z) {
    check_arity(z.size(), stage_input_arity(s), "stage input");
    if (const auto* b = std::get_if<BaseStage>(&s)) {
        switch (b->kind) {
            case BaseKind::y_square:
                return {z[0], z[1] * z[1]};
            case BaseKind::xy_square:
                return {z[0] * z[0], z[1] * z[1]};
            case BaseKind::open_upper: {
                auto [u, v] = open_upper_eval_d(z[0], z[1]);
                return {u, v};
            }
            case BaseKind::open_upper_factor3: {
                auto [u, v] = open_upper_eval_d(z[1], z[2]);
                return {z[0], u, v};
            }
        }
    }
    if (const auto* a = std::get_if<AffineStage>(&s)) {
        double x = a->map.m00.to_double() * z[0] + a->map.m01.to_double() * z[1] +
                   a->map.t.x.to_double();
        double y = a->map.m10.to_double() * z[0] + a->map.m11.to_double() * z[1] +
                   a->map.t.y.to_double();
        return {x, y};
    }
    if (const auto* f = std::get_if<FoldStage>(&s)) {
        return {z[0], f->data.spec.h.eval_double({z[0], z[1]})};
    }
    const auto& lift = std::get<LiftStage>(s);
    std::vector<double> inner = lift.inner->eval_double({z[0], z[1]});
    return {inner[0] + z[2], inner[1] + z[2]};
}

int StagedMap::output_arity() const {
    int a = domain_arity;
    for (const auto& s : stages) a = stage_output_arity(s);
    return a;
}

std::vector<Rational> StagedMap::eval(const std::vector<Rational>& z) const {
    check_arity(z.size(), domain_arity, "map input");
    std::vector<Rational> cur = z;
    for (const auto& s : stages) cur = apply_stage(s, cur);
    return cur;
}

std::vector<double> StagedMap::eval_double(const std::vector<double>& z) const {
    check_arity(z.size(), domain_arity, "map input");
    std::vector<double> cur = z;
    for (const auto& s : stages) cur = apply_stage_double(s, cur);
    return cur;
}

namespace {

constexpr unsigned long long kDegreeSaturation = 1'000'000'000'000'000'000ULL;

unsigned long long saturating_mul(unsigned long long a, unsigned long long b) {
    if (a == 0 || b == 0) return 0;
    if (a > kDegreeSaturation / b) return kDegreeSaturation;
    return a * b;
}

unsigned long long stage_degree(const Stage& s) {
    if (const auto* b = std::get_if<BaseStage>(&s)) {
        switch (b->kind) {
            case BaseKind::y_square:
            case BaseKind::xy_square:
                return 2;
            case BaseKind::open_upper:
            case BaseKind::open_upper_factor3:
                return 4;
        }
    }
    if (std::holds_alternative<AffineStage>(s)) return 1;
    if (const auto* f = std::get_if<FoldStage>(&s)) {
        uint32_t d = f->data.spec.h.total_degree();
        return d == 0 ? 1 : d;
    }
    unsigned long long d = std::get<LiftStage>(s).inner->predicted_degree();
    return d == 0 ? 1 : d;
}

}  // namespace

unsigned long long StagedMap::predicted_degree() const {
    unsigned long long deg = 1;
    for (const auto& s : stages) deg = saturating_mul(deg, stage_degree(s));
    return deg;
}

size_t StagedMap::fold_count() const {
    size_t n = 0;
    for (const auto& s : stages) {
        if (std::holds_alternative<FoldStage>(s)) ++n;
        if (const auto* l = std::get_if<LiftStage>(&s)) n += l->inner->fold_count();
    }
    return n;
}

void validate_map(const StagedMap& m) {
    require(m.domain_arity == 2 || m.domain_arity == 3, "arity_mismatch",
            "domain arity must be 2 or 3");
    require(m.expected_after.size() == m.stages.size(), "arity_mismatch",
            "expected_after length must match stage count");
    int cur = m.domain_arity;
    for (size_t i = 0; i < m.stages.size(); ++i) {
        const Stage& s = m.stages[i];
        require(stage_input_arity(s) == cur, "arity_mismatch",
                "stage " + std::to_string(i) + " expects arity " +
                    std::to_string(stage_input_arity(s)) + ", previous stage yields " +
                    std::to_string(cur));
        cur = stage_output_arity(s);
        if (m.expected_after[i].has_value())
            require(cur == 2, "arity_mismatch",
                    "expected set attached to a stage with non-planar output");
        if (const auto* l = std::get_if<LiftStage>(&s)) {
            require(l->inner != nullptr, "arity_mismatch", "lift stage has no inner map");
            require(l->inner->domain_arity == 2 && l->inner->output_arity() == 2,
                    "arity_mismatch", "lift inner map must be planar");
            validate_map(*l->inner);
        }
    }
}

std::vector<SparsePoly> expand(const StagedMap& m, unsigned long long degree_cap) {
    validate_map(m);
    unsigned long long deg = m.predicted_degree();
    require(deg <= degree_cap, "degree_cap_exceeded",
            "predicted degree " + std::to_string(deg) + " exceeds cap " +
                std::to_string(degree_cap) +
                "; expansion would be astronomically dense, evaluate the stage chain instead");

    int arity = m.domain_arity;
    std::vector<SparsePoly> cur;
    for (int i = 0; i < arity; ++i) cur.push_back(SparsePoly::variable(arity, i));

    for (const auto& s : m.stages) {
        if (const auto* b = std::get_if<BaseStage>(&s)) {
            switch (b->kind) {
                case BaseKind::y_square:
                    cur = {cur[0], cur[1] * cur[1]};
                    break;
                case BaseKind::xy_square:
                    cur = {cur[0] * cur[0], cur[1] * cur[1]};
                    break;
                case BaseKind::open_upper: {
                    auto [g1, g2] = open_halfplane_factor();
                    cur = {g1.compose({cur[0], cur[1]}), g2.compose({cur[0], cur[1]})};
                    break;
                }
                case BaseKind::open_upper_factor3: {
                    auto [g1, g2] = open_halfplane_factor();
                    cur = {cur[0], g1.compose({cur[1], cur[2]}), g2.compose({cur[1], cur[2]})};
                    break;
                }
            }
            continue;
        }
        if (const auto* a = std::get_if<AffineStage>(&s)) {
            const AffineMap2& A = a->map;
            SparsePoly cx = SparsePoly::constant(arity, A.t.x);
            SparsePoly cy = SparsePoly::constant(arity, A.t.y);
            cur = {A.m00 * cur[0] + A.m01 * cur[1] + cx, A.m10 * cur[0] + A.m11 * cur[1] + cy};
            continue;
        }
        if (const auto* f = std::get_if<FoldStage>(&s)) {
            cur = {cur[0], f->data.spec.h.compose({cur[0], cur[1]})};
            continue;
        }
        const auto& lift = std::get<LiftStage>(s);
        std::vector<SparsePoly> inner = expand(*lift.inner, degree_cap);
        cur = {inner[0].compose({cur[0], cur[1]}) + cur[2],
               inner[1].compose({cur[0], cur[1]}) + cur[2]};
    }
    return cur;
}

}  // namespace polyfold
