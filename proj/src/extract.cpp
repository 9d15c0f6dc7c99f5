#include "closet/extract.hpp"

#include <algorithm>
#include <cmath>

#include "closet/error.hpp"
#include "closet/optimize.hpp"
#include "closet/parallel.hpp"

namespace closet {

std::vector<double> extract_corners(const DGLIDisk& d, double rel_threshold) {
    if (rel_threshold <= 0.0 || rel_threshold >= 1.0)
        throw Error(ErrorKind::DegenerateInput, "rel_threshold must be in (0, 1)");
    if (d.segments() == 0) throw Error(ErrorKind::EmptyDisk, "empty disk");

    std::vector<double> mags;
    mags.reserve(d.segments());
    for (std::size_t i = 0; i < d.segments(); ++i)
        if (d.occupied(i, 1)) mags.push_back(std::abs(d.value(i, 1)));
    if (mags.empty()) throw Error(ErrorKind::EmptyDisk, "first layer has no cells");

    const double peak = *std::max_element(mags.begin(), mags.end());
    if (peak == 0.0) throw Error(ErrorKind::EmptyDisk, "first layer is all zeros");

    std::vector<double> sorted = mags;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double med = sorted[sorted.size() / 2];
    const double floor = 10.0 * med;

    std::vector<double> angles;
    for (std::size_t i = 0; i < d.segments(); ++i) {
        if (!d.occupied(i, 1)) continue;
        double v = std::abs(d.value(i, 1));
        if (v >= rel_threshold * peak && v >= floor) angles.push_back(d.angle(i, 1));
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

std::vector<FitCell> fit_cells(const DiskDiff& diff) {
    std::vector<FitCell> cells;
    double gmax = diff.grid.max_abs_value();
    if (gmax <= 0.0) return cells;
    for (const DiskCell& c : diff.grid.cells())
        cells.push_back({c.angle, c.radius, std::abs(c.value) / gmax});
    return cells;
}

double fold_fit_loss(const std::vector<FitCell>& cells, double a0, double a1, const FitParams& p) {
    double loss = 0.0;
    const double two_tau2 = 2.0 * p.tau * p.tau;
    for (const FitCell& c : cells) {
        const double d = wrap_angle(c.theta - (a0 + a1 * c.r));
        const double d2 = d * d;
        const double p1 = std::exp(-d2 / two_tau2);
        const double p2 = 1.0 / (p.k3 + d2);
        loss += p.k1 * d2 * p1 * std::sqrt(c.g) - p.k2 * p2 * c.g;
    }
    return loss;
}

std::vector<FoldCurve> fit_fold_curves(const DiskDiff& diff, const FitParams& p) {
    if (diff.kind != DiffKind::abs_diff)
        throw Error(ErrorKind::DegenerateInput, "fold fitting expects an abs-diff disk");
    if (p.k1 <= 0 || p.k2 <= 0 || p.k3 <= 0 || p.tau <= 0 || p.n_inits <= 0)
        throw Error(ErrorKind::DegenerateInput, "fit parameters must be positive");

    const std::vector<FitCell> cells = fit_cells(diff);
    if (cells.empty()) throw Error(ErrorKind::NoFoldFound, "diff disk is identically zero");

    ObjectiveFn objective = [&cells, &p](const std::vector<double>& x) {
        return fold_fit_loss(cells, x[0], x[1], p);
    };

    auto run_starts = [&](const std::vector<std::pair<double, double>>& starts) {
        std::vector<MinimizeResult> runs(starts.size());
        parallel_for(starts.size(), [&](std::size_t m) {
            runs[m] = lbfgs_minimize(objective, {starts[m].first, starts[m].second});
        });
        std::vector<FoldCurve> found;
        for (const MinimizeResult& r : runs) {
            if (r.f >= 0.0) continue;
            // Curves sweeping across the disk collect the negative reward
            // by crossing a ridge transversally and converge with extreme
            // slopes; observed fold ridges stay below ~0.6 pi per unit
            // radius even for overlapping folds. Reject the sweepers.
            if (std::abs(r.x[1]) > 0.7 * kPi) continue;
            FoldCurve c;
            c.a0 = r.x[0];
            c.a1 = r.x[1];
            c.loss = r.f;
            c.f = wrap_angle_2pi(c.a0 + c.a1);
            found.push_back(c);
        }
        return found;
    };

    std::vector<std::pair<double, double>> starts;
    for (int m = 0; m < p.n_inits; ++m)
        starts.push_back({2.0 * kPi * double(m) / double(p.n_inits), 0.0});
    std::vector<FoldCurve> accepted = run_starts(starts);

    if (accepted.size() == 1) {
        // A dominant ridge can capture every equidistant start while the
        // opposite half hides in a narrow basin. Probe around the antipode
        // of the found curve with sloped inits before giving up on it.
        starts.clear();
        const double back = accepted.front().a0 + kPi;
        for (int da = -4; da <= 4; ++da)
            for (int ds = -3; ds <= 3; ++ds)
                starts.push_back({back + 0.15 * da, 0.25 * ds});
        std::vector<FoldCurve> rescue = run_starts(starts);
        accepted.insert(accepted.end(), rescue.begin(), rescue.end());
    }
    if (accepted.empty()) throw Error(ErrorKind::NoFoldFound, "no local minimum with negative loss");

    // deduplicate minima whose fold coordinate agrees within one cell width
    const double cell_width = 2.0 * kPi / double(diff.grid.segments());
    std::sort(accepted.begin(), accepted.end(),
              [](const FoldCurve& a, const FoldCurve& b) { return a.f < b.f; });
    std::vector<FoldCurve> unique;
    for (const FoldCurve& c : accepted) {
        if (!unique.empty() && angle_dist(unique.back().f, c.f) <= cell_width) {
            if (c.loss < unique.back().loss) unique.back() = c;
        } else {
            unique.push_back(c);
        }
    }
    // circular wrap: first and last may be the same minimum
    if (unique.size() > 1 && angle_dist(unique.front().f, unique.back().f) <= cell_width) {
        if (unique.back().loss < unique.front().loss) unique.front() = unique.back();
        unique.pop_back();
    }
    return unique;
}

std::pair<double, double> orient_fold(const std::pair<FoldCurve, FoldCurve>& curve_pair,
                                      const DiskDiff& sdiff) {
    if (sdiff.kind != DiffKind::signed_diff)
        throw Error(ErrorKind::DegenerateInput, "orientation expects a signed-diff disk");
    const double fa = curve_pair.first.f, fb = curve_pair.second.f;
    const Vec2 pa{std::cos(fa), std::sin(fa)};
    const Vec2 pb{std::cos(fb), std::sin(fb)};
    const Vec2 chord = pb - pa;

    // First-layer cells carry the clean signal: adjacent pairs on the
    // stationary side keep their dGLI exactly, while folded-side pairs flip
    // sign under the reflection. The crease ridge itself straddles the
    // chord and would vote randomly, so cells near either fold coordinate
    // are skipped.
    const double margin = 2.0 * 2.0 * kPi / double(sdiff.grid.segments());

    double sum_pos = 0.0, sum_neg = 0.0; // by sign of the cross product
    for (std::size_t i = 0; i < sdiff.grid.segments(); ++i) {
        if (!sdiff.grid.occupied(i, 1)) continue;
        const double ang = sdiff.grid.angle(i, 1);
        if (angle_dist(ang, fa) < margin || angle_dist(ang, fb) < margin) continue;
        const Vec2 pos{std::cos(ang), std::sin(ang)};
        const double side = cross(chord, pos - pa);
        if (side > 0.0)
            sum_pos += std::abs(sdiff.grid.value(i, 1));
        else if (side < 0.0)
            sum_neg += std::abs(sdiff.grid.value(i, 1));
    }

    const double hi = std::max(sum_pos, sum_neg), lo = std::min(sum_pos, sum_neg);
    if (hi <= 0.0 || (hi - lo) < 0.05 * hi)
        throw Error(ErrorKind::AmbiguousOrientation, "signed diff mass is split evenly");

    // which side of the chord holds the ccw arc fa -> fb
    const double mid = arc_midpoint_ccw(fa, fb);
    const Vec2 mid_pos{std::cos(mid), std::sin(mid)};
    const double arc_side = cross(chord, mid_pos - pa);
    const bool arc_is_positive_side = arc_side > 0.0;
    const bool heavier_is_positive_side = sum_pos > sum_neg;
    if (arc_is_positive_side == heavier_is_positive_side) return {fa, fb};
    return {fb, fa};
}

CloSE extract_close(const DGLIDisk& start, const DGLIDisk& end, const FitParams& p,
                    double rel_threshold) {
    if (start.segments() != end.segments())
        throw Error(ErrorKind::DimensionMismatch,
                    "disk sizes differ: " + std::to_string(start.segments()) + " vs " +
                        std::to_string(end.segments()));

    CloSE out;
    out.n_segments = start.segments();
    out.corners = extract_corners(start, rel_threshold);

    const DiskDiff adiff = disk_abs_diff(start, end);
    const DiskDiff sdiff = disk_signed_diff(start, end);
    const std::vector<FoldCurve> curves = fit_fold_curves(adiff, p);

    auto list_f = [&curves]() {
        std::string s;
        for (const FoldCurve& c : curves) s += (s.empty() ? "" : ", ") + std::to_string(c.f);
        return s;
    };

    if (curves.size() == 2) {
        out.folds.push_back(orient_fold({curves[0], curves[1]}, sdiff));
        return out;
    }
    if (curves.size() < 2)
        throw Error(ErrorKind::MultiFoldUnpaired, "single unpaired fold curve at f = " + list_f());

    // more than two curves: pair halves whose centre angles differ by ~pi
    std::vector<int> partner(curves.size(), -1);
    for (std::size_t i = 0; i < curves.size(); ++i) {
        if (partner[i] >= 0) continue;
        double best = kPi / 8.0;
        int pick = -1;
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
            if (partner[j] >= 0) continue;
            double gap = std::abs(angle_dist(wrap_angle_2pi(curves[i].a0),
                                             wrap_angle_2pi(curves[j].a0)) - kPi);
            if (gap < best) {
                best = gap;
                pick = int(j);
            }
        }
        if (pick >= 0) {
            partner[i] = pick;
            partner[pick] = int(i);
        }
    }
    double weakest_paired = 0.0;
    bool any_pair = false;
    for (std::size_t i = 0; i < curves.size(); ++i)
        if (partner[i] >= 0) {
            weakest_paired = any_pair ? std::min(weakest_paired, -curves[i].loss) : -curves[i].loss;
            any_pair = true;
        }
    for (std::size_t i = 0; i < curves.size(); ++i) {
        if (partner[i] >= 0) continue;
        // a leftover far shallower than every paired curve is a fitting
        // artifact, not a missed fold half
        if (any_pair && -curves[i].loss < 0.5 * weakest_paired) continue;
        throw Error(ErrorKind::MultiFoldUnpaired,
                    std::to_string(curves.size()) + " fold curves found, unpaired half at f = " +
                        std::to_string(curves[i].f) + " (all f: " + list_f() + ")");
    }
    for (std::size_t i = 0; i < curves.size(); ++i) {
        if (partner[i] < int(i)) continue;
        out.folds.push_back(orient_fold({curves[i], curves[std::size_t(partner[i])]}, sdiff));
    }
    std::sort(out.folds.begin(), out.folds.end());
    return out;
}

CloSE interpolate_close(const CloSE& a, const CloSE& b, double t) {
    if (t < 0.0 || t > 1.0) throw Error(ErrorKind::DegenerateInput, "t must be in [0, 1]");
    if (a.corners.size() != b.corners.size())
        throw Error(ErrorKind::CornerMismatch, "corner counts differ");
    for (std::size_t i = 0; i < a.corners.size(); ++i)
        if (angle_dist(a.corners[i], b.corners[i]) > 1e-9)
            throw Error(ErrorKind::CornerMismatch, "corner " + std::to_string(i) + " differs");
    if (a.folds.size() != 1 || b.folds.size() != 1)
        throw Error(ErrorKind::MalformedClose, "interpolation needs exactly one fold on each side");

    auto lerp_angle = [t](double from, double to) {
        return wrap_angle_2pi(from + t * wrap_angle(to - from));
    };
    CloSE out;
    out.corners = a.corners;
    out.n_segments = a.n_segments;
    out.folds.push_back({lerp_angle(a.folds[0].first, b.folds[0].first),
                         lerp_angle(a.folds[0].second, b.folds[0].second)});
    return out;
}

} // namespace closet
