#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "closet/error.hpp"
#include "closet/semantics.hpp"

using namespace closet;

namespace {

CloSE square_close() {
    CloSE c;
    c.corners = {0.0, kPi / 2, kPi, 3 * kPi / 2};
    c.n_segments = 80;
    return c;
}

bool has_tag(const SemanticLabel& l, const std::string& t) {
    return std::find(l.tags.begin(), l.tags.end(), t) != l.tags.end();
}

} // namespace

TEST_CASE("unfolded cloth") {
    SemanticLabel l = label(square_close());
    CHECK(l.n_corners == 4);
    CHECK(l.folded_corner_indices.empty());
    CHECK(l.tags == std::vector<std::string>{"unfolded"});
    CHECK(!l.sentence.empty());
}

TEST_CASE("diagonal fold through two opposite corners") {
    CloSE c = square_close();
    c.folds = {{0.0, kPi}};
    SemanticLabel l = label(c);
    CHECK(has_tag(l, "diagonal fold"));
    CHECK(l.folded_corner_indices == std::vector<std::size_t>{1});
    CHECK(has_tag(l, "corner fold")); // exactly one corner folded
    REQUIRE(l.fold_edge_positions.size() == 2);
    CHECK(l.fold_edge_positions[0].through_corner);
    CHECK(l.fold_edge_positions[1].through_corner);
}

TEST_CASE("symmetric half fold at edge midpoints") {
    CloSE c = square_close();
    c.folds = {{kPi / 4, 5 * kPi / 4}};
    SemanticLabel l = label(c);
    CHECK(has_tag(l, "symmetric half fold"));
    CHECK(l.folded_corner_indices == std::vector<std::size_t>{1, 2});
    REQUIRE(l.fold_edge_positions.size() == 2);
    CHECK(l.fold_edge_positions[0].fraction == doctest::Approx(0.5));
    CHECK(l.fold_edge_positions[1].fraction == doctest::Approx(0.5));
    CHECK(l.fold_edge_positions[0].edge == 0);
    CHECK(l.fold_edge_positions[1].edge == 2);
}

TEST_CASE("asymmetric fold is not a symmetric half fold") {
    CloSE c = square_close();
    c.folds = {{kPi / 8, 5 * kPi / 4}};
    SemanticLabel l = label(c);
    CHECK(!has_tag(l, "symmetric half fold"));
}

TEST_CASE("interval membership equals brute force") {
    CloSE c;
    c.corners = {0.3, 1.1, 2.0, 2.9, 4.0, 5.5};
    c.n_segments = 80;
    for (double f1 : {0.1, 1.5, 3.1, 5.9}) {
        for (double f2 : {0.7, 2.5, 4.4, 6.1}) {
            if (angle_dist(f1, f2) < 1e-9) continue;
            auto inside = corners_in_fold(c.corners, {f1, f2});
            std::vector<std::size_t> brute;
            double span = wrap_angle_2pi(f2 - f1);
            for (std::size_t i = 0; i < c.corners.size(); ++i) {
                double off = wrap_angle_2pi(c.corners[i] - f1);
                if (off > 0 && off < span) brute.push_back(i);
            }
            CHECK(inside == brute);
        }
    }
}

TEST_CASE("label is invariant under common rotation of all angles") {
    CloSE c = square_close();
    c.folds = {{kPi / 4, 5 * kPi / 4}};
    SemanticLabel base = label(c);

    const double shift = 0.37;
    CloSE rotated;
    rotated.n_segments = c.n_segments;
    for (double t : c.corners) rotated.corners.push_back(wrap_angle_2pi(t + shift));
    std::sort(rotated.corners.begin(), rotated.corners.end());
    rotated.folds = {{wrap_angle_2pi(c.folds[0].first + shift),
                      wrap_angle_2pi(c.folds[0].second + shift)}};
    SemanticLabel moved = label(rotated);
    CHECK(moved.tags == base.tags);
    CHECK(moved.folded_corner_indices.size() == base.folded_corner_indices.size());
}

TEST_CASE("malformed CloSE values are rejected") {
    CloSE bad = square_close();
    bad.corners[2] = bad.corners[1]; // not strictly ascending
    CHECK_THROWS_AS(label(bad), Error);

    CloSE twisted = square_close();
    twisted.folds = {{1.0, 1.0}};
    CHECK_THROWS_AS(label(twisted), Error);

    CloSE range = square_close();
    range.corners[3] = 7.0;
    CHECK_THROWS_AS(label(range), Error);
}

TEST_CASE("circle state labels without corners") {
    CloSE c;
    c.n_segments = 64;
    c.folds = {{0.0, kPi}};
    SemanticLabel l = label(c);
    CHECK(l.n_corners == 0);
    CHECK(l.folded_corner_indices.empty());
    CHECK(l.fold_edge_positions.empty());
}
