#pragma once

#include <array>
#include <string>
#include <vector>

#include "closet/extract.hpp"
#include "closet/geometry.hpp"

namespace closet {

enum class PlanAction { fold, unfold };

struct PlanStep {
    PlanAction action = PlanAction::fold;
    std::string description;
    std::vector<Vec3> picks;  // 1 or 2
    std::vector<Vec3> places; // same count
    std::vector<std::array<Vec3, 3>> waypoints; // per pick: pick, lifted mid, place
};

// Pick corners maximizing the trapezoid spanned by the two corners and
// their perpendicular feet on the fold line. Returns indices into
// folded_corner_angles (one index when only one corner folds). Ties go to
// the smaller index pair.
std::vector<std::size_t> select_pick_corners(const BorderCurve& border,
                                             std::pair<double, double> fold,
                                             const std::vector<double>& folded_corner_angles);

// Place point and 3-point arc for folding `pick` across the line.
// Throws PickOnFoldLine when the pick already sits on the line.
std::pair<Vec3, std::array<Vec3, 3>> make_trajectory(const Vec3& pick, const Line2& fold_line,
                                                     double layer_height);

// Rule-based planner between single-fold states sharing the corner list:
// same folded corner set (or flat start) plans one step; different sets go
// through the unfolded intermediate (unfold + fold).
std::vector<PlanStep> plan(const BorderCurve& initial_border, const CloSE& current,
                           const CloSE& goal, double layer_height = 0.02);

} // namespace closet
