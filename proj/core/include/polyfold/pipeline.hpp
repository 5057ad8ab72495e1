#pragma once

#include "polyfold/staged_map.hpp"

namespace polyfold {

// (x,y) -> (x, y^2) carried onto the target half-plane.
StagedMap build_halfplane_map(const ValidatedPolygon& p);

// (x,y) -> (x^2, y^2) carried onto the target angle (one-vertex polygon).
StagedMap build_quadrant_map(const ValidatedPolygon& p);

// Inductive construction: image of the final map is exactly the closed
// polygon. Each added edge costs one recursion level of three folds and
// the surrounding coordinate changes.
StagedMap build_v_polygon_map(const ValidatedPolygon& p,
                              SignVariant variant = SignVariant::lemma);

// Image is the open interior, reached from one dimension higher: a factor
// covering R x (0,inf), a lift f(x,y) + t(1,1), and the positioning that
// puts the unbounded edges on the coordinate axes. Half-planes are not
// accepted (their interior is already a planar polynomial image).
StagedMap build_interior_map(const ValidatedPolygon& p,
                             SignVariant variant = SignVariant::lemma);

}  // namespace polyfold
