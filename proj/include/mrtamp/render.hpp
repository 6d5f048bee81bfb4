#pragma once

#include <string>

#include "mrtamp/plan.hpp"
#include "mrtamp/scene.hpp"

namespace mrtamp {

/// SVG drawing of a scene and optionally a plan. Every scene entity is one
/// <g class="entity"> element; every plan step is one <g class="step">
/// layer with its corridors and a numbered arrow per moved object. Output
/// depends only on the inputs.
std::string render_svg(const Scene& scene, const Plan* plan = nullptr);

}  // namespace mrtamp
