#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyfold/staged_map.hpp"
#include "polyfold/verify.hpp"

namespace polyfold {

// {"vertices": [["x","y"],...], "dir_in": ["a","b"], "dir_out": ["a","b"]}
// with scalars as reduced rational strings; an optional "kind" switches to
// the half-plane form (single base point, dir_in along the boundary).
std::string polygon_to_json(const ValidatedPolygon& p);
ValidatedPolygon polygon_from_json(const std::string& text);

// Full chain with stages, per-stage expected sets, target and variant.
// Folds are stored with their input set and interval and rebuilt on load;
// the stored fold polynomial must match the rebuilt one bit for bit
// ("map_integrity" otherwise), so a file cannot drift from its own chain.
std::string map_to_json(const StagedMap& m,
                        const std::vector<SparsePoly>* expanded = nullptr);
StagedMap map_from_json(const std::string& text);

// The expanded coordinate polynomials a map file may carry alongside the
// chain; absent when the file has none.
std::optional<std::vector<SparsePoly>> expanded_from_json(const std::string& text);

std::string poly_to_latex(const SparsePoly& p);
std::string map_to_latex(const std::vector<SparsePoly>& coords);

// Everything cmd_verify learned, serialized deterministically (no clocks,
// no pointers, fixed key order) so reruns are byte-identical.
struct VerifySummary {
    std::string input_path;
    uint64_t seed = 0;
    size_t samples = 0;
    size_t grid = 0;
    std::string window;
    double threshold = 0.0;
    std::string scheme;
    std::string variant;
    unsigned long long predicted_degree = 0;
    size_t stage_count = 0;
    size_t fold_count = 0;
    bool containment_exact_chain = false;
    std::optional<ContainmentResult> containment;
    StagewiseResult stagewise;
    std::vector<FoldCertSummary> folds;
    std::optional<CoverageResult> coverage;
    std::optional<CrossCheckResult> cross_check;
    bool pass = false;
};

std::string verify_report_json(const VerifySummary& s);

// "x,y" per unhit target cell center.
std::string misses_csv(const CoverageResult& cov);

}  // namespace polyfold
