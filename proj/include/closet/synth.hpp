#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "closet/geometry.hpp"

namespace closet {

enum class ClothShape { square, rectangle, tshirt, trousers, skirt_trapezoid, circle };

ClothShape shape_from_name(const std::string& name);
const char* shape_name(ClothShape s);

// Corner positions of the flat shape as arc-length fractions from vertex 0.
// Empty for the circle.
std::vector<double> shape_corner_fractions(ClothShape s);

// Flat normalized border with n uniform segments, z = 0, traced
// anticlockwise starting at the shape's first corner.
BorderCurve make_shape(ClothShape s, std::size_t n);

enum class FoldSide { left, right };

struct FoldSpec {
    Line2 line;
    FoldSide side = FoldSide::left; // which half-plane of line.dir folds over
    double layer_height = 0.02;
};

struct SampleMeta {
    std::string shape;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::size_t n_segments = 0;
    double layer_height = 0.02;
};

struct FoldSample {
    BorderCurve start;
    BorderCurve end;
    std::pair<double, double> gt_fold{0.0, 0.0}; // (g1, g2): ccw arc g1->g2 is folded
    std::vector<int> gt_folded_corners;          // indices into the shape's corner list
    SampleMeta meta;
};

// Reflects every vertex on the folded side across the fold line (in xy) and
// raises it to z = layer_height; the stationary side is untouched. Ground
// truth angles come from the exact border crossing arc-length fractions.
// corner_fractions (optional) fills gt_folded_corners.
FoldSample apply_fold(const BorderCurve& b, const FoldSpec& f,
                      const std::vector<double>& corner_fractions = {});

// Seeded per-vertex Gaussian displacement, then re-normalization.
BorderCurve add_noise(const BorderCurve& b, double sigma, std::uint64_t seed);

// Greedy cover in input order: a point becomes a center iff no existing
// center is within eps.
std::vector<Vec3> epsilon_cover(const std::vector<Vec3>& points, double eps);

// Silhouette border of a vertex cloud: zenithal occupancy grid, Moore
// boundary trace of the largest component, nearest-vertex retrace,
// epsilon-cover cleanup, nearest-neighbor chain ordering.
BorderCurve extract_silhouette_border(const std::vector<Vec3>& mesh_vertices, int grid_res,
                                      double cover_eps = 0.04);

// Constraints on random fold lines.
struct FoldDistribution {
    double max_offset = 0.4;          // line offset from centroid, normalized units
    double min_side_fraction = 0.25;  // min share of vertices on each side
};

struct DatasetEntry {
    ClothShape shape = ClothShape::square;
    FoldDistribution folds;
    double sigma = 0.0;
};

// Seeded, reproducible fold samples cycling through the entries. About 40%
// of samples get a random in-plane rotation and translation before
// normalization.
std::vector<FoldSample> generate_dataset(const std::vector<DatasetEntry>& entries,
                                         std::size_t count, std::uint64_t seed,
                                         std::size_t n_segments = 80,
                                         double layer_height = 0.02);

} // namespace closet
