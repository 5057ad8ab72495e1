#pragma once

#include <string>

#include "polyfold/sampling.hpp"
#include "polyfold/staged_map.hpp"

namespace polyfold {

// Forward image samples, one "x,y" row each, deterministic in the plan seed.
std::string plot_csv(const StagedMap& m, const SamplePlan& plan, const Window& w);

// Self-contained picture: image samples as dots, the target boundary drawn
// on top (dashed when only the interior is claimed), everything clipped to
// the window.
std::string plot_svg(const StagedMap& m, const SamplePlan& plan, const Window& w);

}  // namespace polyfold
