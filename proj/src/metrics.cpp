#include "closet/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "closet/disk.hpp"
#include "closet/error.hpp"
#include "closet/parallel.hpp"

namespace closet {

BorderCurve predict_end_border(const BorderCurve& start, const CloSE& close,
                               double layer_height) {
    validate_border(start);
    if (close.folds.size() != 1)
        throw Error(ErrorKind::InvalidFold,
                    "prediction needs exactly one fold, got " + std::to_string(close.folds.size()));
    const double f1 = wrap_angle_2pi(close.folds[0].first);
    const double f2 = wrap_angle_2pi(close.folds[0].second);
    if (angle_dist(f1, f2) < 1e-12)
        throw Error(ErrorKind::InvalidFold, "fold endpoints coincide");

    const double s1 = f1 / (2.0 * kPi);
    const double s2 = f2 / (2.0 * kPi);
    const Vec3 p1 = point_at_fraction(start, s1);
    const Vec3 p2 = point_at_fraction(start, s2);
    if (norm(xy(p2) - xy(p1)) < 1e-12)
        throw Error(ErrorKind::InvalidFold, "fold endpoints map to the same border point");
    const Line2 line{xy(p1), xy(p2) - xy(p1)};

    // vertices strictly inside the anticlockwise arc f1 -> f2 fold over;
    // a hair of tolerance keeps crossing-coincident vertices stationary
    const double span = wrap_angle_2pi(f2 - f1);
    const std::vector<double> cum = cumulative_lengths(start);
    const double total = cum.back();

    BorderCurve out = start;
    for (std::size_t i = 0; i < start.vertices.size(); ++i) {
        const double ang = 2.0 * kPi * cum[i] / total;
        const double off = wrap_angle_2pi(ang - f1);
        if (off <= 1e-9 || off >= span - 1e-9) continue;
        Vec2 r = reflect_point(line, xy(start.vertices[i]));
        out.vertices[i] = {r.x, r.y, layer_height};
    }
    return out;
}

namespace {

std::vector<Vec3> uniform_points(const BorderCurve& b, std::size_t n) {
    const std::vector<double> cum = cumulative_lengths(b);
    const double total = cum.back();
    std::vector<Vec3> pts;
    pts.reserve(n);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double target = total * double(k) / double(n);
        while (seg + 1 < cum.size() - 1 && cum[seg + 1] <= target) ++seg;
        const double len = cum[seg + 1] - cum[seg];
        const double t = len > 0.0 ? (target - cum[seg]) / len : 0.0;
        const Segment s = b.segment(seg);
        pts.push_back(s.start + t * (s.end - s.start));
    }
    return pts;
}

} // namespace

double rmse_curves(const BorderCurve& a, const BorderCurve& b) {
    if (a.vertices.size() != b.vertices.size())
        throw Error(ErrorKind::DimensionMismatch,
                    "vertex counts differ: " + std::to_string(a.vertices.size()) + " vs " +
                        std::to_string(b.vertices.size()));
    const std::size_t n = a.vertices.size();
    const std::vector<Vec3> pa = uniform_points(a, n);
    std::vector<Vec3> pb = uniform_points(b, n);

    double best = std::numeric_limits<double>::infinity();
    for (int dir = 0; dir < 2; ++dir) {
        if (dir == 1) std::reverse(pb.begin(), pb.end());
        for (std::size_t shift = 0; shift < n; ++shift) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += norm2(pa[i] - pb[(i + shift) % n]);
            best = std::min(best, sum);
        }
    }
    return std::sqrt(best / double(n));
}

double frechet_open(std::span<const Vec3> a, std::span<const Vec3> b) {
    const std::size_t na = a.size(), nb = b.size();
    if (na == 0 || nb == 0) throw Error(ErrorKind::DegenerateInput, "empty polyline");
    std::vector<double> dp(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            const double d = dist(a[i], b[j]);
            double reach;
            if (i == 0 && j == 0)
                reach = d;
            else if (i == 0)
                reach = std::max(dp[j - 1], d);
            else if (j == 0)
                reach = std::max(dp[(i - 1) * nb], d);
            else
                reach = std::max(std::min({dp[(i - 1) * nb + j], dp[(i - 1) * nb + j - 1],
                                           dp[i * nb + j - 1]}),
                                 d);
            dp[i * nb + j] = reach;
        }
    }
    return dp[na * nb - 1];
}

double frechet_discrete(const BorderCurve& a, const BorderCurve& b) {
    if (a.vertices.empty() || b.vertices.empty())
        throw Error(ErrorKind::DegenerateInput, "empty curve");
    const std::vector<Vec3>& pa = a.vertices;
    std::vector<Vec3> pb = b.vertices;
    const std::size_t nb = pb.size();

    double best = std::numeric_limits<double>::infinity();
    std::vector<Vec3> rotated(nb);
    for (int dir = 0; dir < 2; ++dir) {
        if (dir == 1) std::reverse(pb.begin(), pb.end());
        for (std::size_t shift = 0; shift < nb; ++shift) {
            for (std::size_t j = 0; j < nb; ++j) rotated[j] = pb[(j + shift) % nb];
            best = std::min(best, frechet_open(pa, rotated));
        }
    }
    return best;
}

EvalReport evaluate(const std::vector<FoldSample>& dataset, const EvalParams& params) {
    if (dataset.empty()) throw Error(ErrorKind::DegenerateInput, "empty dataset");

    EvalReport report;
    report.samples.resize(dataset.size());
    parallel_for(dataset.size(), [&](std::size_t i) {
        const FoldSample& sample = dataset[i];
        SampleResult& r = report.samples[i];
        r.index = i;
        r.shape = sample.meta.shape;
        try {
            const DGLIDisk start_disk = compute_disk(sample.start, params.eps);
            const DGLIDisk end_disk = compute_disk(sample.end, params.eps);
            CloSE close =
                extract_close(start_disk, end_disk, params.fit, params.rel_threshold);
            if (close.folds.size() != 1)
                throw Error(ErrorKind::MultiFoldUnpaired,
                            std::to_string(close.folds.size()) + " folds extracted");
            const BorderCurve predicted =
                predict_end_border(sample.start, close, sample.meta.layer_height);
            r.rmse = rmse_curves(predicted, sample.end);
            r.frechet = frechet_discrete(predicted, sample.end);
            r.fold_error = 0.5 * (angle_dist(close.folds[0].first, sample.gt_fold.first) +
                                  angle_dist(close.folds[0].second, sample.gt_fold.second));
            r.status = "ok";
            r.ok = true;
        } catch (const Error& e) {
            r.status = error_kind_name(e.kind());
            r.ok = false;
        }
    });

    double rmse_sum = 0.0, rmse_sq = 0.0, fre_sum = 0.0, fre_sq = 0.0, fold_sum = 0.0;
    for (const SampleResult& r : report.samples) {
        if (!r.ok) {
            ++report.n_failure;
            ++report.failure_counts[r.status];
            continue;
        }
        ++report.n_success;
        rmse_sum += r.rmse;
        rmse_sq += r.rmse * r.rmse;
        fre_sum += r.frechet;
        fre_sq += r.frechet * r.frechet;
        fold_sum += r.fold_error;
    }
    if (report.n_success > 0) {
        const double n = double(report.n_success);
        report.rmse_mean = rmse_sum / n;
        report.rmse_var = rmse_sq / n - report.rmse_mean * report.rmse_mean;
        report.frechet_mean = fre_sum / n;
        report.frechet_var = fre_sq / n - report.frechet_mean * report.frechet_mean;
        report.fold_error_mean = fold_sum / n;
    }
    return report;
}

} // namespace closet
