#include "closet/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "closet/error.hpp"

namespace closet {

std::vector<std::size_t> corners_in_fold(const std::vector<double>& corners,
                                         std::pair<double, double> fold) {
    const double span = wrap_angle_2pi(fold.second - fold.first);
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < corners.size(); ++i) {
        const double off = wrap_angle_2pi(corners[i] - fold.first);
        if (off > 1e-12 && off < span - 1e-12) inside.push_back(i);
    }
    return inside;
}

namespace {

void check_close(const CloSE& c) {
    for (double t : c.corners)
        if (!(t >= 0.0 && t < 2.0 * kPi))
            throw Error(ErrorKind::MalformedClose, "corner angle outside [0, 2pi)");
    for (std::size_t i = 1; i < c.corners.size(); ++i)
        if (c.corners[i] <= c.corners[i - 1])
            throw Error(ErrorKind::MalformedClose, "corner angles not strictly ascending");
    for (const auto& f : c.folds) {
        if (!(f.first >= 0.0 && f.first < 2.0 * kPi) || !(f.second >= 0.0 && f.second < 2.0 * kPi))
            throw Error(ErrorKind::MalformedClose, "fold angle outside [0, 2pi)");
        if (angle_dist(f.first, f.second) < 1e-12)
            throw Error(ErrorKind::MalformedClose, "fold endpoints coincide");
    }
}

FoldEdgePosition locate_on_edge(const std::vector<double>& corners, double f, double tol) {
    FoldEdgePosition pos;
    const std::size_t n = corners.size();
    // edge j spans corners[j] -> corners[j+1] anticlockwise
    for (std::size_t j = 0; j < n; ++j) {
        const double a = corners[j];
        const double b = corners[(j + 1) % n];
        const double width = wrap_angle_2pi(b - a) == 0.0 ? 2.0 * kPi : wrap_angle_2pi(b - a);
        const double off = wrap_angle_2pi(f - a);
        if (off <= width + 1e-15) {
            pos.edge = j;
            if (angle_dist(f, a) < tol) {
                pos.fraction = 0.0;
                pos.through_corner = true;
            } else if (angle_dist(f, b) < tol) {
                pos.fraction = 1.0;
                pos.through_corner = true;
            } else {
                pos.fraction = off / width;
            }
            return pos;
        }
    }
    // f coincides with corner 0 up to wraparound
    pos.edge = n - 1;
    pos.fraction = 1.0;
    pos.through_corner = true;
    return pos;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

} // namespace

SemanticLabel label(const CloSE& c) {
    check_close(c);
    SemanticLabel out;
    out.n_corners = c.corners.size();

    if (c.folds.empty()) {
        out.tags.push_back("unfolded");
        out.sentence = "Cloth with " + std::to_string(out.n_corners) + " corners, unfolded.";
        return out;
    }

    const double corner_tol =
        c.n_segments > 0 ? 2.0 * kPi / (4.0 * double(c.n_segments)) : 1e-3;

    for (const auto& fold : c.folds) {
        std::vector<std::size_t> inside = corners_in_fold(c.corners, fold);
        for (std::size_t k : inside)
            if (std::find(out.folded_corner_indices.begin(), out.folded_corner_indices.end(), k) ==
                out.folded_corner_indices.end())
                out.folded_corner_indices.push_back(k);

        if (!c.corners.empty()) {
            FoldEdgePosition p1 = locate_on_edge(c.corners, fold.first, corner_tol);
            FoldEdgePosition p2 = locate_on_edge(c.corners, fold.second, corner_tol);
            out.fold_edge_positions.push_back(p1);
            out.fold_edge_positions.push_back(p2);

            if (p1.through_corner && p2.through_corner)
                out.tags.push_back("diagonal fold");
            if (inside.size() == 1) out.tags.push_back("corner fold");
            if (!p1.through_corner && !p2.through_corner &&
                std::abs(p1.fraction - (1.0 - p2.fraction)) < 0.05 &&
                inside.size() * 2 == c.corners.size())
                out.tags.push_back("symmetric half fold");
        }
    }
    std::sort(out.folded_corner_indices.begin(), out.folded_corner_indices.end());

    std::string folded_list;
    for (std::size_t k : out.folded_corner_indices)
        folded_list += (folded_list.empty() ? "" : ", ") + std::to_string(k + 1);
    out.sentence = "Cloth with " + std::to_string(out.n_corners) + " corners, " +
                   std::to_string(c.folds.size()) + " fold" + (c.folds.size() > 1 ? "s" : "") + ";";
    for (const auto& fold : c.folds)
        out.sentence += " fold (" + fmt(fold.first) + " -> " + fmt(fold.second) + ")";
    out.sentence += out.folded_corner_indices.empty()
                        ? "; no corners folded."
                        : "; folded corners: " + folded_list + ".";
    for (const std::string& t : out.tags) out.sentence += " [" + t + "]";
    return out;
}

} // namespace closet
