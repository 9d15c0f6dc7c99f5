#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "closet/disk.hpp"
#include "closet/geometry.hpp"

namespace closet {

// Compact cloth-state descriptor: corner angles plus ordered fold pairs on
// the unit circle. The anticlockwise arc f1 -> f2 is the folded side.
struct CloSE {
    std::vector<double> corners;                    // strictly ascending, [0, 2pi)
    std::vector<std::pair<double, double>> folds;   // (f1, f2)
    std::size_t n_segments = 0;
};

// Half fold curve theta = a0 + a1*r on the disk.
struct FoldCurve {
    double a0 = 0.0;
    double a1 = 0.0;
    double loss = 0.0;
    double f = 0.0; // a0 + a1 wrapped into [0, 2pi)
};

struct FitParams {
    double k1 = 0.1;
    double k2 = 0.05;
    double k3 = 0.1;
    double tau = kPi / 4.0;
    int n_inits = 20;
};

inline constexpr double kDefaultCornerThreshold = 0.5;

// Angles of first-layer cells whose |value| reaches rel_threshold of the
// layer maximum and additionally 10x the layer median (keeps corner-free
// borders from reporting every cell). Throws EmptyDisk when the first layer
// is identically zero.
std::vector<double> extract_corners(const DGLIDisk& d,
                                    double rel_threshold = kDefaultCornerThreshold);

// Normalized cells of a diff disk, ready for curve fitting (g scaled to
// max 1).
struct FitCell {
    double theta;
    double r;
    double g;
};
std::vector<FitCell> fit_cells(const DiskDiff& diff);

// The fitting objective over (a0, a1); exposed for gradient checks.
double fold_fit_loss(const std::vector<FitCell>& cells, double a0, double a1, const FitParams& p);

// Local minima of the fit loss started from n_inits equidistant curves.
// Keeps minima with negative loss, deduplicates within one cell width of f,
// sorts by f. Throws NoFoldFound when nothing qualifies.
std::vector<FoldCurve> fit_fold_curves(const DiskDiff& diff, const FitParams& p = {});

// Orders the two half-curves of one fold so the anticlockwise arc f1 -> f2
// covers the folded side (the heavier side of the signed diff). Throws
// AmbiguousOrientation when the side sums differ by less than 5%.
std::pair<double, double> orient_fold(const std::pair<FoldCurve, FoldCurve>& curve_pair,
                                      const DiskDiff& sdiff);

// Full abstraction: corners from the start disk, folds from the diff disks.
CloSE extract_close(const DGLIDisk& start, const DGLIDisk& end, const FitParams& p = {},
                    double rel_threshold = kDefaultCornerThreshold);

// Linear interpolation between two single-fold states sharing corners; each
// fold angle moves along the shorter arc.
CloSE interpolate_close(const CloSE& a, const CloSE& b, double t);

} // namespace closet
