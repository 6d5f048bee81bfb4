#pragma once

#include <string>
#include <string_view>

#include "mrtamp/plan.hpp"
#include "mrtamp/scene.hpp"

namespace mrtamp {

/// Plan document that does not fit the scene: unknown names, a robot missing
/// from or repeated in a step, malformed trajectories.
class PlanStructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a plan document against `scene`. Throws SchemaError for syntax and
/// type problems, PlanStructureError for dangling or inconsistent references.
Plan load_plan(std::string_view text, const Scene& scene);

std::string plan_to_json(const Plan& plan, const Scene& scene);

}  // namespace mrtamp
