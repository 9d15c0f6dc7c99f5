#include "closet/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "closet/error.hpp"

namespace closet {

double signed_distance(const Line2& line, Vec2 p) {
    double len = norm(line.dir);
    return cross(line.dir, p - line.point) / len;
}

Vec2 project_point(const Line2& line, Vec2 p) {
    double len2 = dot(line.dir, line.dir);
    double t = dot(p - line.point, line.dir) / len2;
    return line.point + t * line.dir;
}

Vec2 reflect_point(const Line2& line, Vec2 p) {
    Vec2 foot = project_point(line, p);
    return foot + (foot - p);
}

double wrap_angle(double a) {
    double r = std::fmod(a + kPi, 2.0 * kPi);
    if (r <= 0.0) r += 2.0 * kPi;
    return r - kPi;
}

double wrap_angle_2pi(double a) {
    double r = std::fmod(a, 2.0 * kPi);
    if (r < 0.0) r += 2.0 * kPi;
    return r;
}

double arc_midpoint_ccw(double a, double b) {
    double span = wrap_angle_2pi(b - a);
    return wrap_angle_2pi(a + 0.5 * span);
}

namespace {

void validate_polyline(const BorderCurve& b, std::size_t min_n) {
    const std::size_t n = b.vertices.size();
    if (n < min_n)
        throw Error(ErrorKind::DegenerateInput,
                    "border needs at least " + std::to_string(min_n) + " vertices, got " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& v = b.vertices[i];
        if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
            throw Error(ErrorKind::DegenerateInput, "non-finite vertex " + std::to_string(i));
        if (dist(v, b.vertices[(i + 1) % n]) <= 1e-12)
            throw Error(ErrorKind::DegenerateInput, "zero-length segment " + std::to_string(i));
    }
}

} // namespace

void validate_border(const BorderCurve& b) { validate_polyline(b, 8); }

namespace {

constexpr double kCrossTol = 1e-12;

Vec3 unit_normal(Vec3 a, Vec3 b, const char* label) {
    Vec3 c = cross(a, b);
    double m = norm(c);
    if (m < kCrossTol)
        throw Error(ErrorKind::DegenerateConfiguration,
                    std::string("vanishing cross product for normal ") + label);
    return c / m;
}

// arcsin of the dot product of two unit vectors. The naive asin(dot) loses
// half the significant digits when the vectors are nearly (anti)parallel,
// which is the common near-coplanar case here; the atan2 form stays fully
// conditioned and never needs the dot clamped.
double asin_dot(Vec3 n, Vec3 m) {
    return kPi / 2.0 - std::atan2(norm(cross(n, m)), dot(n, m));
}

} // namespace

double gli_analytic(const Segment& s1, const Segment& s2) {
    const Vec3 a = s1.start, b = s1.end, c = s2.start, d = s2.end;

    // Unit normals of the tetrahedron faces, ordered so that consecutive
    // pairs bound the spherical quadrangle traced by the direction a->c,
    // a->d, b->d, b->c.
    const Vec3 na = unit_normal(c - a, d - a, "a");
    const Vec3 nb = unit_normal(d - a, d - b, "b");
    const Vec3 nc = unit_normal(d - b, c - b, "c");
    const Vec3 nd = unit_normal(c - b, c - a, "d");

    double area = asin_dot(na, nb) + asin_dot(nb, nc) + asin_dot(nc, nd) + asin_dot(nd, na);

    // Orientation of the quadrangle relative to the Gauss map.
    double orient = dot(cross(d - c, b - a), c - a);
    double sign = orient > 0.0 ? 1.0 : (orient < 0.0 ? -1.0 : 0.0);

    return area * sign / (4.0 * kPi);
}

namespace {

Segment shift_end(const Segment& s, double dz) {
    return {s.start, {s.end.x, s.end.y, s.end.z + dz}};
}

} // namespace

double dgli(const Segment& s1, const Segment& s2, double eps) {
    if (eps <= 0.0)
        throw Error(ErrorKind::DegenerateInput, "dgli eps must be positive");
    // Stacked fold layers can align a segment's shifted end exactly with
    // another segment's endpoints (a removable singularity of the closed
    // form). A minute change of the step breaks the alignment; identical
    // segments stay degenerate for every step and propagate.
    for (int attempt = 0;; ++attempt) {
        const double e = eps * (1.0 + attempt * 0x1p-16);
        try {
            double g2 = gli_analytic(shift_end(s1, 2.0 * e), shift_end(s2, 2.0 * e));
            double g1 = gli_analytic(shift_end(s1, e), shift_end(s2, e));
            return (g2 - g1) / e;
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::DegenerateConfiguration || attempt >= 4) throw;
        }
    }
}

BorderCurve normalize_border(const BorderCurve& b) {
    validate_polyline(b, 3);
    const std::size_t n = b.vertices.size();
    Vec3 centroid{};
    for (const Vec3& v : b.vertices) centroid = centroid + v;
    centroid = centroid / double(n);

    double max_r = 0.0;
    for (const Vec3& v : b.vertices) max_r = std::max(max_r, norm(v - centroid));
    if (max_r < 1e-12)
        throw Error(ErrorKind::DegenerateInput, "all border vertices coincide");

    BorderCurve out;
    out.vertices.reserve(n);
    for (const Vec3& v : b.vertices) out.vertices.push_back((v - centroid) / max_r);
    return out;
}

std::vector<double> cumulative_lengths(const BorderCurve& b) {
    const std::size_t n = b.vertices.size();
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Segment s = b.segment(i);
        cum[i + 1] = cum[i] + dist(s.start, s.end);
    }
    return cum;
}

double total_length(const BorderCurve& b) { return cumulative_lengths(b).back(); }

namespace {

Vec3 point_at_length(const BorderCurve& b, const std::vector<double>& cum, double target) {
    // target in [0, total)
    auto it = std::upper_bound(cum.begin(), cum.end(), target);
    std::size_t i = std::size_t(std::max<std::ptrdiff_t>(0, (it - cum.begin()) - 1));
    if (i >= b.vertices.size()) i = b.vertices.size() - 1;
    const Segment s = b.segment(i);
    double seg_len = cum[i + 1] - cum[i];
    double t = seg_len > 0.0 ? (target - cum[i]) / seg_len : 0.0;
    return s.start + t * (s.end - s.start);
}

} // namespace

Vec3 point_at_fraction(const BorderCurve& b, double t) {
    const std::vector<double> cum = cumulative_lengths(b);
    double f = t - std::floor(t);
    return point_at_length(b, cum, f * cum.back());
}

double vertex_fraction(const BorderCurve& b, std::size_t i) {
    const std::vector<double> cum = cumulative_lengths(b);
    return cum[i % b.vertices.size()] / cum.back();
}

BorderCurve resample_border(const BorderCurve& b, std::size_t n) {
    validate_polyline(b, 3);
    if (n < 8)
        throw Error(ErrorKind::DegenerateInput, "resample target must be >= 8");
    const std::vector<double> cum = cumulative_lengths(b);
    const double total = cum.back();
    BorderCurve out;
    out.vertices.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        out.vertices.push_back(point_at_length(b, cum, total * double(k) / double(n)));
    return out;
}

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::EmptyDisk: return "EmptyDisk";
        case ErrorKind::NoFoldFound: return "NoFoldFound";
        case ErrorKind::AmbiguousOrientation: return "AmbiguousOrientation";
        case ErrorKind::MultiFoldUnpaired: return "MultiFoldUnpaired";
        case ErrorKind::CornerMismatch: return "CornerMismatch";
        case ErrorKind::InvalidPolygon: return "InvalidPolygon";
        case ErrorKind::BadFoldLine: return "BadFoldLine";
        case ErrorKind::EmptyFold: return "EmptyFold";
        case ErrorKind::OpenChain: return "OpenChain";
        case ErrorKind::TooSparse: return "TooSparse";
        case ErrorKind::InvalidFold: return "InvalidFold";
        case ErrorKind::MalformedClose: return "MalformedClose";
        case ErrorKind::UnsupportedMultiFold: return "UnsupportedMultiFold";
        case ErrorKind::PickOnFoldLine: return "PickOnFoldLine";
    }
    return "UnknownError";
}

} // namespace closet
