#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "closet/extract.hpp"

namespace closet {

// Where a fold endpoint sits inside the corner-to-corner edge that contains
// it. fraction 0 or 1 means the endpoint passes through the corner itself.
struct FoldEdgePosition {
    std::size_t edge = 0;  // edge j runs corner j -> corner j+1 (mod n)
    double fraction = 0.0; // in [0, 1]
    bool through_corner = false;
};

struct SemanticLabel {
    std::size_t n_corners = 0;
    std::vector<std::size_t> folded_corner_indices;   // ascending
    std::vector<FoldEdgePosition> fold_edge_positions; // two per fold, f1 then f2
    std::vector<std::string> tags;
    std::string sentence;
};

// Corners inside the anticlockwise open interval (f1, f2).
std::vector<std::size_t> corners_in_fold(const std::vector<double>& corners,
                                         std::pair<double, double> fold);

// Interval reasoning over the CloSE circle: folded corners, per-endpoint
// edge positions, and a fixed tag vocabulary ("unfolded", "corner fold",
// "diagonal fold", "symmetric half fold"). Throws MalformedClose.
SemanticLabel label(const CloSE& c);

} // namespace closet
