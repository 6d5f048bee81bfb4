#pragma once

#include <string>
#include <vector>

#include "mrtamp/plan.hpp"
#include "mrtamp/scene.hpp"

namespace mrtamp {

/// Condition keys used in report entries.
namespace condition {
inline constexpr const char* kMotion = "i";        // corridors collision-free, in reach
inline constexpr const char* kPlacement = "ii";    // placements inside target regions, collision-free
inline constexpr const char* kHandover = "iii";    // handover legs meet at the handover point
inline constexpr const char* kMonotone = "monotonicity";
inline constexpr const char* kGoal = "goal";
}  // namespace condition

struct Violation {
  std::string condition;
  int step = -1;  // 0-based; -1 for whole-plan entries
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool passed(const std::string& cond) const;
  std::string to_json() const;
};

/// Replays `plan` on a copy of the scene's initial state and reports every
/// violated condition. Throws PlanStructureError when the plan does not fit
/// the scene (wrong slot count, handover slots disagreeing).
ValidationReport validate_plan(const Scene& scene, const Plan& plan);

}  // namespace mrtamp
