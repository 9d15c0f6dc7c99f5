#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "closet/extract.hpp"
#include "closet/geometry.hpp"
#include "closet/synth.hpp"

namespace closet {

// Applies a single-fold CloSE to a flat border: the vertices on the
// anticlockwise arc f1 -> f2 reflect across the 2D line through the two
// border points at those arc-length positions and rise to layer_height.
// Vertex count and ordering are preserved.
BorderCurve predict_end_border(const BorderCurve& start, const CloSE& close,
                               double layer_height = 0.02);

// Root mean squared distance between two closed curves after uniform
// arc-length resampling, minimized over cyclic shift and traversal
// direction.
double rmse_curves(const BorderCurve& a, const BorderCurve& b);

// Discrete Frechet distance between open polylines (dynamic programming
// over the coupling lattice).
double frechet_open(std::span<const Vec3> a, std::span<const Vec3> b);

// Closed-curve discrete Frechet distance: minimized over cyclic shift and
// direction of b.
double frechet_discrete(const BorderCurve& a, const BorderCurve& b);

struct EvalParams {
    double eps = kDefaultDgliEps;
    FitParams fit;
    double rel_threshold = kDefaultCornerThreshold;
    double layer_height = 0.02;
};

struct SampleResult {
    std::size_t index = 0;
    std::string shape;
    std::string status; // "ok" or the failure kind
    double rmse = std::numeric_limits<double>::quiet_NaN();
    double frechet = std::numeric_limits<double>::quiet_NaN();
    double fold_error = std::numeric_limits<double>::quiet_NaN(); // mean endpoint error, rad
    bool ok = false;
};

struct EvalReport {
    std::vector<SampleResult> samples;
    std::size_t n_success = 0;
    std::size_t n_failure = 0;
    double rmse_mean = 0.0, rmse_var = 0.0;
    double frechet_mean = 0.0, frechet_var = 0.0;
    double fold_error_mean = 0.0;
    std::map<std::string, std::size_t> failure_counts;
};

// Full protocol per sample: disks for both frames, CloSE extraction,
// end-border prediction, RMSE + Frechet against the true end. Failures
// become counted statuses, never exceptions. Aggregates cover successful
// samples only.
EvalReport evaluate(const std::vector<FoldSample>& dataset, const EvalParams& params = {});

} // namespace closet
