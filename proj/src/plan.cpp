#include "closet/plan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "closet/error.hpp"
#include "closet/semantics.hpp"

namespace closet {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

Line2 fold_line_of(const BorderCurve& border, std::pair<double, double> fold) {
    const Vec3 p1 = point_at_fraction(border, wrap_angle_2pi(fold.first) / (2.0 * kPi));
    const Vec3 p2 = point_at_fraction(border, wrap_angle_2pi(fold.second) / (2.0 * kPi));
    if (norm(xy(p2) - xy(p1)) < 1e-12)
        throw Error(ErrorKind::InvalidFold, "fold endpoints map to the same border point");
    return {xy(p1), xy(p2) - xy(p1)};
}

std::array<Vec3, 3> make_arc(const Vec3& pick, const Vec3& place) {
    const double run = norm(xy(place) - xy(pick));
    const double lift = std::max(0.5 * run, 1.5 * std::max(pick.z, place.z) + 0.01);
    const Vec3 mid{0.5 * (pick.x + place.x), 0.5 * (pick.y + place.y), lift};
    return {pick, mid, place};
}

Vec3 corner_position(const BorderCurve& border, double angle) {
    return point_at_fraction(border, wrap_angle_2pi(angle) / (2.0 * kPi));
}

std::vector<double> folded_corner_angles_of(const CloSE& state, std::pair<double, double> fold) {
    std::vector<double> angles;
    for (std::size_t idx : corners_in_fold(state.corners, fold))
        angles.push_back(state.corners[idx]);
    return angles;
}

// Grasp points for a fold: the selected corners, or the folded arc's
// midpoint when the flap holds no corner.
std::vector<Vec3> grasp_points(const BorderCurve& border, std::pair<double, double> fold,
                               const std::vector<double>& folded_angles) {
    std::vector<Vec3> picks;
    if (folded_angles.empty()) {
        picks.push_back(corner_position(border, arc_midpoint_ccw(fold.first, fold.second)));
        return picks;
    }
    for (std::size_t idx : select_pick_corners(border, fold, folded_angles))
        picks.push_back(corner_position(border, folded_angles[idx]));
    return picks;
}

} // namespace

std::vector<std::size_t> select_pick_corners(const BorderCurve& border,
                                             std::pair<double, double> fold,
                                             const std::vector<double>& folded_corner_angles) {
    if (folded_corner_angles.empty()) return {};
    if (folded_corner_angles.size() == 1) return {0};

    const Line2 line = fold_line_of(border, fold);
    double best_area = -1.0;
    std::pair<std::size_t, std::size_t> best{0, 1};
    for (std::size_t i = 0; i < folded_corner_angles.size(); ++i) {
        for (std::size_t j = i + 1; j < folded_corner_angles.size(); ++j) {
            const Vec2 ca = xy(corner_position(border, folded_corner_angles[i]));
            const Vec2 cb = xy(corner_position(border, folded_corner_angles[j]));
            const Vec2 fa = project_point(line, ca);
            const Vec2 fb = project_point(line, cb);
            // quadrilateral (ca, cb, fb, fa)
            const Vec2 quad[4] = {ca, cb, fb, fa};
            double twice_area = 0.0;
            for (int k = 0; k < 4; ++k) twice_area += cross(quad[k], quad[(k + 1) % 4]);
            const double area = 0.5 * std::abs(twice_area);
            if (area > best_area + 1e-15) {
                best_area = area;
                best = {i, j};
            }
        }
    }
    return {best.first, best.second};
}

std::pair<Vec3, std::array<Vec3, 3>> make_trajectory(const Vec3& pick, const Line2& fold_line,
                                                     double layer_height) {
    if (std::abs(signed_distance(fold_line, xy(pick))) < 1e-9)
        throw Error(ErrorKind::PickOnFoldLine, "pick point lies on the fold line");
    const Vec2 r = reflect_point(fold_line, xy(pick));
    const Vec3 place{r.x, r.y, layer_height};
    return {place, make_arc(pick, place)};
}

std::vector<PlanStep> plan(const BorderCurve& initial_border, const CloSE& current,
                           const CloSE& goal, double layer_height) {
    if (current.corners.size() != goal.corners.size())
        throw Error(ErrorKind::CornerMismatch, "corner counts differ");
    for (std::size_t i = 0; i < current.corners.size(); ++i)
        if (angle_dist(current.corners[i], goal.corners[i]) > 1e-9)
            throw Error(ErrorKind::CornerMismatch, "corner " + std::to_string(i) + " differs");
    if (current.folds.size() > 1 || goal.folds.size() > 1)
        throw Error(ErrorKind::UnsupportedMultiFold, "planning handles at most one fold per state");

    auto folds_equal = [](const CloSE& a, const CloSE& b) {
        if (a.folds.size() != b.folds.size()) return false;
        for (std::size_t i = 0; i < a.folds.size(); ++i)
            if (angle_dist(a.folds[i].first, b.folds[i].first) > 1e-9 ||
                angle_dist(a.folds[i].second, b.folds[i].second) > 1e-9)
                return false;
        return true;
    };
    if (folds_equal(current, goal)) return {};

    auto fold_step = [&](std::pair<double, double> fold, const std::vector<Vec3>& picks,
                         const char* verb) {
        const Line2 line = fold_line_of(initial_border, fold);
        PlanStep step;
        step.action = PlanAction::fold;
        for (const Vec3& pick : picks) {
            auto [place, arc] = make_trajectory(pick, line, layer_height);
            step.picks.push_back(pick);
            step.places.push_back(place);
            step.waypoints.push_back(arc);
        }
        step.description = std::string(verb) + " along the border chord (" + fmt(fold.first) +
                           " -> " + fmt(fold.second) + ") moving " +
                           std::to_string(step.picks.size()) + " grasp point(s).";
        return step;
    };

    auto unfold_step = [&](std::pair<double, double> fold) {
        const Line2 line = fold_line_of(initial_border, fold);
        const std::vector<double> folded = folded_corner_angles_of(current, fold);
        PlanStep step;
        step.action = PlanAction::unfold;
        for (const Vec3& flat : grasp_points(initial_border, fold, folded)) {
            const Vec2 r = reflect_point(line, xy(flat));
            const Vec3 pick{r.x, r.y, layer_height}; // current folded position
            step.picks.push_back(pick);
            step.places.push_back(flat);
            step.waypoints.push_back(make_arc(pick, flat));
        }
        step.description = "Unfold the flap (" + fmt(fold.first) + " -> " + fmt(fold.second) +
                           ") back to the flat state.";
        return step;
    };

    std::vector<PlanStep> steps;

    if (current.folds.empty()) {
        // Case 1 from flat: a single fold step
        const auto fold = goal.folds[0];
        steps.push_back(fold_step(
            fold, grasp_points(initial_border, fold, folded_corner_angles_of(goal, fold)),
            "Fold"));
        return steps;
    }
    if (goal.folds.empty()) {
        steps.push_back(unfold_step(current.folds[0]));
        return steps;
    }

    const auto cur_set = corners_in_fold(current.corners, current.folds[0]);
    const auto goal_set = corners_in_fold(goal.corners, goal.folds[0]);
    if (cur_set == goal_set) {
        // Case 1: same semantic region; move the folded corners directly
        const auto fold = goal.folds[0];
        const Line2 cur_line = fold_line_of(initial_border, current.folds[0]);
        const Line2 goal_line = fold_line_of(initial_border, fold);
        const std::vector<double> folded = folded_corner_angles_of(goal, fold);
        PlanStep step;
        step.action = PlanAction::fold;
        for (const Vec3& flat : grasp_points(initial_border, fold, folded)) {
            const Vec2 from = reflect_point(cur_line, xy(flat));
            const Vec2 to = reflect_point(goal_line, xy(flat));
            const Vec3 pick{from.x, from.y, layer_height};
            const Vec3 place{to.x, to.y, layer_height};
            step.picks.push_back(pick);
            step.places.push_back(place);
            step.waypoints.push_back(make_arc(pick, place));
        }
        step.description = "Adjust the fold to the chord (" + fmt(fold.first) + " -> " +
                           fmt(fold.second) + ") without unfolding.";
        steps.push_back(step);
        return steps;
    }

    // Case 2: different semantic regions; pass through the unfolded state
    steps.push_back(unfold_step(current.folds[0]));
    const auto fold = goal.folds[0];
    steps.push_back(fold_step(
        fold, grasp_points(initial_border, fold, folded_corner_angles_of(goal, fold)), "Fold"));
    return steps;
}

} // namespace closet
