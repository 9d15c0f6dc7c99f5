#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "closet/disk.hpp"
#include "closet/error.hpp"
#include "closet/extract.hpp"
#include "closet/optimize.hpp"
#include "closet/synth.hpp"

using namespace closet;

namespace {

FoldSample folded_square(Line2 line, FoldSide side, std::size_t n = 80) {
    BorderCurve b = make_shape(ClothShape::square, n);
    FoldSpec spec;
    spec.line = line;
    spec.side = side;
    return apply_fold(b, spec, shape_corner_fractions(ClothShape::square));
}

} // namespace

TEST_CASE("extract_corners finds the 4 square corners") {
    DGLIDisk d = compute_disk(make_shape(ClothShape::square, 40));
    auto corners = extract_corners(d, 0.5);
    REQUIRE(corners.size() == 4);
    for (double got : corners) {
        double best = 2.0 * kPi;
        for (std::size_t k = 0; k < 4; ++k)
            best = std::min(best, angle_dist(got, 2.0 * kPi * double(k) / 4.0));
        CHECK(best < 2.0 * kPi / 40.0);
    }
    // returned angles are first-layer cell angles
    for (double c : corners) {
        double idx = (c * 40.0 / kPi - 1.0) / 2.0;
        CHECK(std::abs(idx - std::round(idx)) < 1e-9);
    }
}

TEST_CASE("extract_corners is stable under in-plane rotation") {
    BorderCurve b = make_shape(ClothShape::square, 40);
    BorderCurve rotated = b;
    const double a = kPi / 6.0;
    for (Vec3& v : rotated.vertices)
        v = {v.x * std::cos(a) - v.y * std::sin(a), v.x * std::sin(a) + v.y * std::cos(a), v.z};
    auto c1 = extract_corners(compute_disk(b), 0.5);
    auto c2 = extract_corners(compute_disk(rotated), 0.5);
    REQUIRE(c1.size() == c2.size());
    for (std::size_t i = 0; i < c1.size(); ++i)
        CHECK(angle_dist(c1[i], c2[i]) < 2.0 * kPi / 40.0 + 1e-12);
}

TEST_CASE("extract_corners returns nothing on a circle and EmptyDisk on zeros") {
    DGLIDisk circle = compute_disk(make_shape(ClothShape::circle, 40));
    CHECK(extract_corners(circle, 0.5).empty());

    DiskGrid zeros(16);
    for (std::size_t i = 0; i < 16; ++i) zeros.set(i, 1, 0.0);
    CHECK_THROWS_AS(extract_corners(zeros, 0.5), Error);
    CHECK_THROWS_AS(extract_corners(circle, 1.5), Error);
}

TEST_CASE("fit_fold_curves needs a nonzero diff") {
    DGLIDisk d = compute_disk(make_shape(ClothShape::square, 40));
    DiskDiff zero = disk_abs_diff(d, d);
    CHECK_THROWS_AS(fit_fold_curves(zero), Error);
    DiskDiff wrong_kind = disk_signed_diff(d, d);
    CHECK_THROWS_AS(fit_fold_curves(wrong_kind), Error);
}

TEST_CASE("single diagonal fold yields exactly two curves near ground truth") {
    FoldSample s = folded_square({{0, 0}, {-1, 1}}, FoldSide::left);
    DGLIDisk d0 = compute_disk(s.start), d1 = compute_disk(s.end);
    auto curves = fit_fold_curves(disk_abs_diff(d0, d1));
    REQUIRE(curves.size() == 2);
    double g1 = s.gt_fold.first, g2 = s.gt_fold.second;
    double e1 = std::min(angle_dist(curves[0].f, g1), angle_dist(curves[0].f, g2));
    double e2 = std::min(angle_dist(curves[1].f, g1), angle_dist(curves[1].f, g2));
    CHECK(e1 < 0.1);
    CHECK(e2 < 0.1);
    for (const FoldCurve& c : curves) CHECK(c.loss < 0.0);
}

TEST_CASE("two sequential half folds produce four curves") {
    // slightly off-centre lines keep the four crease coordinates more than
    // one disk cell apart, so dedup does not merge the twin layers
    BorderCurve b = make_shape(ClothShape::square, 80);
    FoldSpec first;
    first.line = {{0.15, 0}, {0, 1}};
    first.side = FoldSide::left;
    first.layer_height = 0.02;
    FoldSample s1 = apply_fold(b, first);
    FoldSpec second;
    second.line = {{0, -0.12}, {1, 0}};
    second.side = FoldSide::left; // y > 0 folds down
    second.layer_height = 0.04;
    FoldSample s2 = apply_fold(s1.end, second);

    DGLIDisk flat = compute_disk(b);
    DGLIDisk final_disk = compute_disk(s2.end);
    auto curves = fit_fold_curves(disk_abs_diff(flat, final_disk));
    CHECK(curves.size() == 4);
}

TEST_CASE("orient_fold marks the folded side") {
    // left half folded over right
    FoldSample s = folded_square({{0, 0}, {0, 1}}, FoldSide::left);
    DGLIDisk d0 = compute_disk(s.start), d1 = compute_disk(s.end);
    auto curves = fit_fold_curves(disk_abs_diff(d0, d1));
    REQUIRE(curves.size() == 2);
    auto [f1, f2] = orient_fold({curves[0], curves[1]}, disk_signed_diff(d0, d1));
    // the ccw arc f1 -> f2 must contain the left corners (fractions 0.5, 0.75)
    for (double corner : {kPi, 3.0 * kPi / 2.0}) {
        double off = wrap_angle_2pi(corner - f1);
        CHECK(off < wrap_angle_2pi(f2 - f1));
    }

    // the same fold performed in the opposite direction swaps the pair
    FoldSample sr = folded_square({{0, 0}, {0, 1}}, FoldSide::right);
    DGLIDisk e0 = compute_disk(sr.start), e1 = compute_disk(sr.end);
    auto curves_r = fit_fold_curves(disk_abs_diff(e0, e1));
    REQUIRE(curves_r.size() == 2);
    auto [r1, r2] = orient_fold({curves_r[0], curves_r[1]}, disk_signed_diff(e0, e1));
    for (double corner : {0.0, kPi / 2.0}) {
        double off = wrap_angle_2pi(corner - r1);
        CHECK(off < wrap_angle_2pi(r2 - r1));
    }
}

TEST_CASE("orient_fold rejects a silent signed diff") {
    FoldSample s = folded_square({{0, 0}, {0, 1}}, FoldSide::left);
    DGLIDisk d0 = compute_disk(s.start), d1 = compute_disk(s.end);
    auto curves = fit_fold_curves(disk_abs_diff(d0, d1));
    REQUIRE(curves.size() == 2);
    DiskDiff mute{DiskGrid(d0.segments()), DiffKind::signed_diff};
    for (int l = 1; l <= int(d0.layers()); ++l)
        for (std::size_t i = 0; i < d0.segments(); ++i)
            if (d0.occupied(i, l)) mute.grid.set(i, l, 0.0);
    CHECK_THROWS_AS(orient_fold({curves[0], curves[1]}, mute), Error);
}

TEST_CASE("extract_close on a folded tshirt returns 8 corners and one fold") {
    BorderCurve b = make_shape(ClothShape::tshirt, 80);
    FoldSpec spec;
    spec.line = {{0, -0.15}, {1, 0}}; // across the torso, below the sleeves
    spec.side = FoldSide::left;
    FoldSample s = apply_fold(b, spec, shape_corner_fractions(ClothShape::tshirt));
    CloSE c = extract_close(compute_disk(s.start), compute_disk(s.end));
    CHECK(c.corners.size() == 8);
    REQUIRE(c.folds.size() == 1);
    CHECK(angle_dist(c.folds[0].first, s.gt_fold.first) < 0.1);
    CHECK(angle_dist(c.folds[0].second, s.gt_fold.second) < 0.1);
    CHECK(c.n_segments == 80);
}

TEST_CASE("extract_close surfaces NoFoldFound for identical states") {
    DGLIDisk d = compute_disk(make_shape(ClothShape::square, 40));
    try {
        extract_close(d, d);
        FAIL("expected NoFoldFound");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoFoldFound);
    }
    DGLIDisk other = compute_disk(make_shape(ClothShape::square, 48));
    CHECK_THROWS_AS(extract_close(d, other), Error);
}

TEST_CASE("extract_close handles seeded vertex noise") {
    BorderCurve b = make_shape(ClothShape::square, 80);
    BorderCurve noisy = add_noise(b, 0.01, 2024);
    FoldSpec spec;
    spec.line = {{0.1, 0}, {0.3, 1}};
    spec.side = FoldSide::left;
    FoldSample s = apply_fold(noisy, spec, shape_corner_fractions(ClothShape::square));
    CloSE c = extract_close(compute_disk(s.start), compute_disk(s.end));
    REQUIRE(c.folds.size() == 1);
    CHECK(angle_dist(c.folds[0].first, s.gt_fold.first) < 0.15);
    CHECK(angle_dist(c.folds[0].second, s.gt_fold.second) < 0.15);
}

TEST_CASE("extract_close is invariant under rotation and uniform scaling") {
    FoldSample s = folded_square({{0.2, 0}, {0.3, 1}}, FoldSide::right);
    CloSE base = extract_close(compute_disk(s.start), compute_disk(s.end));
    REQUIRE(base.folds.size() == 1);

    const double a = 0.9, scale = 2.7;
    auto xform = [&](BorderCurve c) {
        for (Vec3& v : c.vertices)
            v = {scale * (v.x * std::cos(a) - v.y * std::sin(a)),
                 scale * (v.x * std::sin(a) + v.y * std::cos(a)), scale * v.z};
        return c;
    };
    CloSE moved = extract_close(compute_disk(normalize_border(xform(s.start))),
                                compute_disk(normalize_border(xform(s.end))));
    REQUIRE(moved.folds.size() == 1);
    const double cell = 2.0 * kPi / 80.0;
    CHECK(angle_dist(base.folds[0].first, moved.folds[0].first) < cell + 1e-9);
    CHECK(angle_dist(base.folds[0].second, moved.folds[0].second) < cell + 1e-9);
}

TEST_CASE("fit loss is negative at ground-truth fold curves on oracle samples") {
    auto ds = generate_dataset({{ClothShape::square, {}, 0.0},
                                {ClothShape::rectangle, {}, 0.0},
                                {ClothShape::tshirt, {}, 0.0},
                                {ClothShape::trousers, {}, 0.0}},
                               40, 99);
    FitParams p;
    for (const FoldSample& s : ds) {
        auto cells = fit_cells(disk_abs_diff(compute_disk(s.start), compute_disk(s.end)));
        REQUIRE(!cells.empty());
        // a curve through the gt fold coordinate with modest ridge slope
        for (double g : {s.gt_fold.first, s.gt_fold.second}) {
            double best = std::numeric_limits<double>::infinity();
            for (double a1 = -0.5; a1 <= 0.5 + 1e-9; a1 += 0.1)
                best = std::min(best, fold_fit_loss(cells, g - a1, a1, p));
            CHECK(best < 0.0);
        }
    }
}

TEST_CASE("optimizer gradient matches independent central differences") {
    FoldSample s = folded_square({{0.1, 0}, {0.4, 1}}, FoldSide::left);
    auto cells = fit_cells(disk_abs_diff(compute_disk(s.start), compute_disk(s.end)));
    FitParams p;
    ObjectiveFn f = [&](const std::vector<double>& x) {
        return fold_fit_loss(cells, x[0], x[1], p);
    };
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ua(0.0, 2.0 * kPi), us(-1.0, 1.0);
    const double h = 1e-6;
    for (int k = 0; k < 10; ++k) {
        std::vector<double> x{ua(rng), us(rng)};
        auto g = numeric_gradient(f, x, h);
        // independent evaluation
        double dg0 = (f({x[0] + h, x[1]}) - f({x[0] - h, x[1]})) / (2 * h);
        double dg1 = (f({x[0], x[1] + h}) - f({x[0], x[1] - h})) / (2 * h);
        double dotp = g[0] * dg0 + g[1] * dg1;
        double na = std::hypot(g[0], g[1]), nb = std::hypot(dg0, dg1);
        if (na > 1e-12 && nb > 1e-12) CHECK(dotp / (na * nb) > 0.99);
    }
}

TEST_CASE("lbfgs_minimize solves a quadratic") {
    auto quad = [](const std::vector<double>& x) {
        double dx = x[0] - 3.0, dy = x[1] + 1.5;
        return 2.0 * dx * dx + 0.5 * dy * dy + 7.0;
    };
    auto res = lbfgs_minimize(quad, {10.0, -9.0});
    CHECK(res.converged);
    CHECK(std::abs(res.x[0] - 3.0) < 1e-4);
    CHECK(std::abs(res.x[1] + 1.5) < 1e-4);
    CHECK(res.f == doctest::Approx(7.0));
}

TEST_CASE("interpolate_close moves folds along the shorter arc") {
    CloSE a;
    a.corners = {0.0, kPi / 2, kPi, 3 * kPi / 2};
    a.folds = {{0.0, kPi}};
    a.n_segments = 80;
    CloSE b = a;
    b.folds = {{kPi / 2, 3 * kPi / 2}};

    CloSE t0 = interpolate_close(a, b, 0.0);
    CHECK(t0.folds[0].first == doctest::Approx(0.0));
    CHECK(t0.folds[0].second == doctest::Approx(kPi));
    CloSE t1 = interpolate_close(a, b, 1.0);
    CHECK(t1.folds[0].first == doctest::Approx(kPi / 2));
    CHECK(t1.folds[0].second == doctest::Approx(3 * kPi / 2));
    CloSE tm = interpolate_close(a, b, 0.5);
    CHECK(tm.folds[0].first == doctest::Approx(kPi / 4));
    CHECK(tm.folds[0].second == doctest::Approx(5 * kPi / 4));

    CloSE c = a;
    c.corners[1] += 0.1;
    CHECK_THROWS_AS(interpolate_close(a, c, 0.5), Error);
}
