#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "closet/error.hpp"
#include "closet/geometry.hpp"
#include "oracles.hpp"

using namespace closet;

namespace {

// Square traced anticlockwise: corners and edge midpoints, 8 vertices.
BorderCurve square_border(double half = 1.0, std::size_t n = 8) {
    BorderCurve poly;
    poly.vertices = {{half, -half, 0}, {half, 0, 0},  {half, half, 0},   {0, half, 0},
                     {-half, half, 0}, {-half, 0, 0}, {-half, -half, 0}, {0, -half, 0}};
    if (n == 8) return poly;
    return resample_border(poly, n);
}

BorderCurve circle_border(std::size_t n, double r = 1.0) {
    BorderCurve b;
    for (std::size_t k = 0; k < n; ++k) {
        double a = 2.0 * kPi * double(k) / double(n);
        b.vertices.push_back({r * std::cos(a), r * std::sin(a), 0.0});
    }
    return b;
}

} // namespace

TEST_CASE("gli_analytic matches Simpson quadrature of the Gauss integral") {
    std::mt19937 rng(1234);
    int checked = 0;
    double worst = 0.0;
    while (checked < 100) {
        auto [s1, s2] = testing::random_segment_pair(rng);
        double q = testing::gli_quadrature(s1, s2);
        if (std::abs(q) < 1e-3) continue; // near-coplanar: relative error ill-posed
        double a = gli_analytic(s1, s2);
        double rel = std::abs(a - q) / std::abs(q);
        worst = std::max(worst, rel);
        ++checked;
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("gli_analytic is symmetric in its arguments") {
    std::mt19937 rng(77);
    for (int k = 0; k < 50; ++k) {
        auto [s1, s2] = testing::random_segment_pair(rng);
        CHECK(std::abs(gli_analytic(s1, s2) - gli_analytic(s2, s1)) < 1e-12);
    }
}

TEST_CASE("gli_analytic vanishes for coplanar segments") {
    Segment s1{{0, 0, 0}, {1, 0, 0}};
    Segment s2{{0.2, 0.7, 0}, {1.4, 1.1, 0}};
    CHECK(std::abs(gli_analytic(s1, s2)) < 1e-12);
}

TEST_CASE("gli_analytic rejects degenerate configurations") {
    Segment s{{0, 0, 0}, {1, 0, 0}};
    CHECK_THROWS_AS(gli_analytic(s, s), Error);
    // shared endpoint
    Segment t{{1, 0, 0}, {1, 1, 0}};
    CHECK_THROWS_AS(gli_analytic(s, t), Error);
}

TEST_CASE("dgli is zero for collinear planar segments") {
    Segment s1{{0, 0, 0}, {1, 0, 0}};
    for (double off : {1.6, 2.5, 4.0}) {
        Segment s2{{off, 0, 0}, {off + 1.0, 0, 0}};
        CHECK(std::abs(dgli(s1, s2)) < 1e-9);
    }
}

TEST_CASE("dgli flips sign under reflection about the common line") {
    Segment s1{{0, 0, 0}, {1, 0, 0}};
    for (double alpha : {0.3, 0.8, 1.2}) {
        Segment up{{0.5, 0.2, 0}, {0.5 + std::cos(alpha), 0.2 + std::sin(alpha), 0}};
        Segment down{{0.5, -0.2, 0}, {0.5 + std::cos(alpha), -0.2 - std::sin(alpha), 0}};
        double a = dgli(s1, up);
        double b = dgli(s1, down);
        CHECK(a == doctest::Approx(-b).epsilon(1e-9));
        CHECK(std::abs(a) > 1e-8); // the sweep must not be trivially zero
    }
}

TEST_CASE("|dgli| decreases with separation at fixed angle") {
    Segment s1{{0, 0, 0}, {1, 0, 0}};
    double alpha = kPi / 4.0;
    double prev = std::numeric_limits<double>::infinity();
    for (double d : {0.1, 0.2, 0.4}) {
        Segment s2{{0.5, d, 0}, {0.5 + std::cos(alpha), d + std::sin(alpha), 0}};
        double v = std::abs(dgli(s1, s2));
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("dgli invariant under z-rotation and xy-translation") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Segment s1{{0, 0, 0}, {1, 0, 0.1}};
    Segment s2{{0.4, 0.5, 0}, {1.2, 0.9, 0.3}};
    double base = dgli(s1, s2);
    for (int k = 0; k < 10; ++k) {
        double a = u(rng) * kPi;
        double tx = u(rng), ty = u(rng);
        auto xform = [&](Vec3 v) -> Vec3 {
            return {v.x * std::cos(a) - v.y * std::sin(a) + tx,
                    v.x * std::sin(a) + v.y * std::cos(a) + ty, v.z};
        };
        Segment t1{xform(s1.start), xform(s1.end)};
        Segment t2{xform(s2.start), xform(s2.end)};
        CHECK(dgli(t1, t2) == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("dgli accepts consecutive border segments") {
    Segment s1{{0, 0, 0}, {1, 0, 0}};
    Segment s2{{1, 0, 0}, {1, 1, 0}};
    CHECK(std::isfinite(dgli(s1, s2)));
}

TEST_CASE("normalize_border maps a square to the unit circle scale") {
    BorderCurve b = square_border(2.0);
    BorderCurve n = normalize_border(b);
    double expect = 2.0 / std::sqrt(8.0); // corners at distance sqrt(8) from centroid
    for (std::size_t i = 0; i < 8; i += 2) {
        CHECK(std::abs(norm(n.vertices[i] - Vec3{}) - 1.0) < 1e-12);
    }
    CHECK(std::abs(n.vertices[0].x - expect) < 1e-12);
}

TEST_CASE("normalize_border is idempotent and ignores translation/scale") {
    BorderCurve b = circle_border(16, 3.0);
    for (Vec3& v : b.vertices) v = v + Vec3{2.0, -1.0, 0.5};
    BorderCurve n1 = normalize_border(b);
    BorderCurve n2 = normalize_border(n1);
    for (std::size_t i = 0; i < b.vertices.size(); ++i)
        CHECK(dist(n1.vertices[i], n2.vertices[i]) < 1e-12);

    BorderCurve scaled = b;
    for (Vec3& v : scaled.vertices) v = 2.5 * v + Vec3{-7.0, 0.25, 0.0};
    BorderCurve n3 = normalize_border(scaled);
    for (std::size_t i = 0; i < b.vertices.size(); ++i)
        CHECK(dist(n1.vertices[i], n3.vertices[i]) < 1e-9);
}

TEST_CASE("resample_border hits square corners and midpoints") {
    BorderCurve poly = square_border(1.0);
    BorderCurve r = resample_border(poly, 8);
    for (std::size_t i = 0; i < 8; ++i) CHECK(dist(r.vertices[i], poly.vertices[i]) < 1e-12);
    CHECK(total_length(r) == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("resample_border keeps uniform curves fixed") {
    BorderCurve c = circle_border(32);
    BorderCurve r = resample_border(c, 32);
    for (std::size_t i = 0; i < 32; ++i) CHECK(dist(c.vertices[i], r.vertices[i]) < 1e-9);
}

TEST_CASE("resample_border stays on an analytic circle") {
    BorderCurve c = circle_border(100);
    BorderCurve r = resample_border(c, 50);
    for (const Vec3& v : r.vertices) CHECK(std::abs(norm(v) - 1.0) < 1e-3);
}

TEST_CASE("border validation rejects tiny and degenerate input") {
    BorderCurve b;
    b.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
    CHECK_THROWS_AS(validate_border(b), Error);
    BorderCurve dup = circle_border(12);
    dup.vertices[5] = dup.vertices[4];
    CHECK_THROWS_AS(validate_border(dup), Error);
}

TEST_CASE("wrap helpers") {
    CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
    CHECK(wrap_angle_2pi(-0.5) == doctest::Approx(2 * kPi - 0.5));
    CHECK(arc_midpoint_ccw(0.0, kPi) == doctest::Approx(kPi / 2));
    CHECK(arc_midpoint_ccw(kPi, 0.0) == doctest::Approx(3 * kPi / 2));
}

TEST_CASE("2D line helpers reflect and measure sides") {
    Line2 line{{0, 0}, {0, 1}}; // the y-axis
    CHECK(signed_distance(line, {1, 0}) < 0);   // right of +y direction
    CHECK(signed_distance(line, {-1, 0}) > 0);  // left
    Vec2 r = reflect_point(line, {1, 2});
    CHECK(r.x == doctest::Approx(-1.0));
    CHECK(r.y == doctest::Approx(2.0));
}
