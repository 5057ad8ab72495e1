#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyfold/sampling.hpp"
#include "polyfold/staged_map.hpp"

namespace polyfold {

// Exact end-to-end evaluation keeps every digit; coordinate bit-length grows
// roughly linearly in the predicted degree, so chains past this limit must be
// checked stage by stage instead.
inline constexpr unsigned long long kExactChainDegreeLimit = 5000;

// The set the finished map is supposed to produce.
Region target_region(const StagedMap& m);

struct ContainmentResult {
    size_t samples = 0;
    size_t failures = 0;
    std::string first_failure;
    bool ok() const { return failures == 0; }
};

// Exact rational samples through the whole chain, membership in the target
// checked exactly. Maps above kExactChainDegreeLimit are refused
// ("degree_cap_exceeded"); interior maps get their third coordinate forced
// positive to match the lifted construction.
ContainmentResult check_containment(const StagedMap& m, const Region& target,
                                    const SamplePlan& plan);

struct StagewiseResult {
    size_t stages_checked = 0;
    size_t samples = 0;
    size_t failures = 0;
    std::string first_failure;
    bool ok() const { return failures == 0; }
};

// For each stage with a declared planar image: sample the previous stage's
// declared set (or the plane for the first stage), apply just that stage,
// and test the declared image exactly. plan.count samples per stage.
StagewiseResult check_stagewise(const StagedMap& m, const SamplePlan& plan);

struct FoldCertSummary {
    std::string path;  // stage position, lift stages add a "lift:" prefix
    size_t fibers = 0;
    size_t valid = 0;
    std::vector<FiberCertificate> certificates;
    bool ok() const { return fibers > 0 && valid == fibers; }
};

// Certifies every fold in the chain (descending into lifted inner maps) on a
// deterministic mix of fibers: inside the folding interval, outside it, and
// at finite interval endpoints, all within the folded set's projection.
std::vector<FoldCertSummary> certify_map_folds(const StagedMap& m, size_t fibers_per_fold,
                                               uint64_t seed);

struct CoverageResult {
    Window window;
    size_t grid = 0;
    size_t target_cells = 0;
    size_t hit_cells = 0;
    size_t near_boundary_misses = 0;
    size_t forward_samples = 0;
    size_t walk_attempts = 0;
    size_t walk_hits = 0;
    std::vector<std::pair<double, double>> miss_centers;  // capped at 256

    double fraction() const {
        return target_cells == 0 ? 1.0
                                 : static_cast<double>(hit_cells) / static_cast<double>(target_cells);
    }
};

// Grid coverage of the target region within the window. Cells count as
// targets when their exact center lies in the region. Forward double
// sampling marks hits; the guided scheme follows up every unhit cell with a
// backward stage-by-stage witness search whose candidate is confirmed by a
// forward evaluation, so false hits cannot occur.
CoverageResult check_coverage(const StagedMap& m, const Region& target, const Window& w,
                              size_t grid, const SamplePlan& plan);

struct CrossCheckResult {
    size_t samples = 0;
    size_t mismatches = 0;
    std::string first_mismatch;
    bool ok() const { return mismatches == 0; }
};

// Staged evaluation against expanded polynomials, exact equality.
CrossCheckResult cross_check_expansion(const StagedMap& m,
                                       const std::vector<SparsePoly>& expanded,
                                       const SamplePlan& plan);

// Backward witness search used by guided coverage; exposed for tests.
std::optional<std::vector<double>> backward_witness(const StagedMap& m, double tx, double ty);

}  // namespace polyfold
