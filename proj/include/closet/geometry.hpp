#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace closet {

inline constexpr double kPi = 3.14159265358979323846;

// Forward difference step for the zenithal GLI derivative, in normalized
// cloth units.
inline constexpr double kDefaultDgliEps = 1e-3;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator*(Vec3 v, double s) { return s * v; }
inline Vec3 operator/(Vec3 v, double s) { return {v.x / s, v.y / s, v.z / s}; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(Vec3 v) { return dot(v, v); }
inline double norm(Vec3 v) { return std::sqrt(norm2(v)); }
inline double dist(Vec3 a, Vec3 b) { return norm(a - b); }

struct Vec2 {
    double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline Vec2 xy(Vec3 v) { return {v.x, v.y}; }

// Infinite line in the xy-plane.
struct Line2 {
    Vec2 point;
    Vec2 dir; // need not be unit length
};

// Positive on the left of dir, negative on the right.
double signed_distance(const Line2& line, Vec2 p);
Vec2 reflect_point(const Line2& line, Vec2 p);
Vec2 project_point(const Line2& line, Vec2 p);

// Maps an angle difference into (-pi, pi].
double wrap_angle(double a);
// Maps into [0, 2*pi).
double wrap_angle_2pi(double a);
inline double angle_dist(double a, double b) { return std::abs(wrap_angle(a - b)); }
// Midpoint of the anticlockwise arc a -> b.
double arc_midpoint_ccw(double a, double b);

struct Segment {
    Vec3 start, end;
};

// Closed, ordered 3D polyline: segment i runs vertices[i] -> vertices[i+1 mod N].
struct BorderCurve {
    std::vector<Vec3> vertices;

    std::size_t segment_count() const { return vertices.size(); }
    Segment segment(std::size_t i) const {
        return {vertices[i], vertices[(i + 1) % vertices.size()]};
    }
};

// Throws DegenerateInput unless N >= 8, all coordinates finite and every
// segment has positive length.
void validate_border(const BorderCurve& b);

// Gauss linking integral between two straight segments, evaluated with the
// closed form (signed spherical quadrangle area / 4*pi).
// Throws DegenerateConfiguration for shared endpoints or collinear triples.
double gli_analytic(const Segment& s1, const Segment& s2);

// Zenithal derivative of the GLI: (G(x+2e) - G(x+e)) / e, where the shift
// raises only each segment's end vertex along +z. Well-posed for border
// segments that share an endpoint.
double dgli(const Segment& s1, const Segment& s2, double eps = kDefaultDgliEps);

// Centroid to origin, max vertex radius to exactly 1. Idempotent.
BorderCurve normalize_border(const BorderCurve& b);

// n vertices at equal arc-length spacing along b, starting at vertex 0.
BorderCurve resample_border(const BorderCurve& b, std::size_t n);

// Cumulative arc length; size N+1, front 0, back = total length.
std::vector<double> cumulative_lengths(const BorderCurve& b);
double total_length(const BorderCurve& b);

// Point at arc-length fraction t (wrapped into [0,1)) from vertex 0.
Vec3 point_at_fraction(const BorderCurve& b, double t);

// Arc-length fraction of vertex i.
double vertex_fraction(const BorderCurve& b, std::size_t i);

} // namespace closet
