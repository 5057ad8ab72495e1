#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "polyfold/folding.hpp"
#include "polyfold/geometry.hpp"
#include "polyfold/poly.hpp"
#include "polyfold/region.hpp"

namespace polyfold {

// Atomic polynomial maps used as pipeline seeds.
//   y_square            (x,y) -> (x, y^2)                image: closed upper half plane
//   xy_square           (x,y) -> (x^2, y^2)              image: closed quadrant
//   open_upper          (x,y) -> (y(xy-1), (xy-1)^2+x^2) image: open upper half plane
//   open_upper_factor3  (u1,u2,u3) -> (u1, open_upper(u2,u3))
enum class BaseKind { y_square, xy_square, open_upper, open_upper_factor3 };

const char* base_kind_name(BaseKind k);
BaseKind base_kind_from_name(const std::string& name);

struct BaseStage {
    BaseKind kind;
};

struct AffineStage {
    AffineMap2 map;
};

struct FoldStage {
    FoldData data;
};

struct StagedMap;

// (x, y, t) -> inner(x, y) + (t, t)
struct LiftStage {
    std::shared_ptr<const StagedMap> inner;
};

using Stage = std::variant<BaseStage, AffineStage, FoldStage, LiftStage>;

int stage_input_arity(const Stage& s);
int stage_output_arity(const Stage& s);

std::vector<Rational> apply_stage(const Stage& s, const std::vector<Rational>& z);
std::vector<double> apply_stage_double(const Stage& s, const std::vector<double>& z);

// The two coordinates of open_upper in variables x, y.
std::pair<SparsePoly, SparsePoly> open_halfplane_factor();

struct StagedMap {
    int domain_arity = 2;
    std::vector<Stage> stages;
    // Per stage, the exact image of the intended input set, when tracked.
    // Same length as stages; nullopt where no planar set applies.
    std::vector<std::optional<Region>> expected_after;
    std::optional<ValidatedPolygon> target;
    bool interior_map = false;
    SignVariant variant = SignVariant::lemma;

    int output_arity() const;
    std::vector<Rational> eval(const std::vector<Rational>& z) const;
    std::vector<double> eval_double(const std::vector<double>& z) const;

    // Product of stage degrees, saturating; an upper bound for the
    // expanded coordinate degrees.
    unsigned long long predicted_degree() const;

    size_t fold_count() const;
};

// Throws "arity_mismatch" if consecutive stages do not chain, or the
// expected_after length disagrees with stages.
void validate_map(const StagedMap& m);

// Symbolic composition of all stages into one polynomial per output
// coordinate. Refuses maps whose predicted degree exceeds the cap, since
// dense expansion is exponential in chain depth ("degree_cap_exceeded").
std::vector<SparsePoly> expand(const StagedMap& m, unsigned long long degree_cap = 64);

}  // namespace polyfold
