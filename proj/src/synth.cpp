#include "closet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "closet/error.hpp"
#include "closet/parallel.hpp"

namespace closet {

namespace {

// Polygon corner tables. Side lengths are integer multiples of
// perimeter/80, so resampling at n = 80 (and n = 40 for the 4-corner
// shapes) lands vertices exactly on the corners.
const std::vector<Vec2>& shape_polygon(ClothShape s) {
    static const std::vector<Vec2> square = {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    static const std::vector<Vec2> rectangle = {{1.5, -1}, {1.5, 1}, {-1.5, 1}, {-1.5, -1}};
    static const std::vector<Vec2> tshirt = {{7, 0},    {7, 12},   {11, 12},  {11, 18},
                                             {-11, 18}, {-11, 12}, {-7, 12},  {-7, 0}};
    static const std::vector<Vec2> trousers = {{9, 16}, {-9, 16}, {-9, 0}, {-3, 0},
                                               {-3, 6},  {3, 6},   {3, 0},  {9, 0}};
    static const std::vector<Vec2> skirt = {{16, 0}, {11, 12}, {-11, 12}, {-16, 0}};
    switch (s) {
        case ClothShape::square: return square;
        case ClothShape::rectangle: return rectangle;
        case ClothShape::tshirt: return tshirt;
        case ClothShape::trousers: return trousers;
        case ClothShape::skirt_trapezoid: return skirt;
        case ClothShape::circle: break;
    }
    throw Error(ErrorKind::InvalidPolygon, "circle has no polygon");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

ClothShape shape_from_name(const std::string& name) {
    if (name == "square") return ClothShape::square;
    if (name == "rectangle") return ClothShape::rectangle;
    if (name == "tshirt") return ClothShape::tshirt;
    if (name == "trousers") return ClothShape::trousers;
    if (name == "skirt" || name == "skirt_trapezoid") return ClothShape::skirt_trapezoid;
    if (name == "circle") return ClothShape::circle;
    throw Error(ErrorKind::InvalidPolygon, "unknown shape '" + name + "'");
}

const char* shape_name(ClothShape s) {
    switch (s) {
        case ClothShape::square: return "square";
        case ClothShape::rectangle: return "rectangle";
        case ClothShape::tshirt: return "tshirt";
        case ClothShape::trousers: return "trousers";
        case ClothShape::skirt_trapezoid: return "skirt_trapezoid";
        case ClothShape::circle: return "circle";
    }
    return "?";
}

std::vector<double> shape_corner_fractions(ClothShape s) {
    if (s == ClothShape::circle) return {};
    const std::vector<Vec2>& poly = shape_polygon(s);
    std::vector<double> cum{0.0};
    for (std::size_t i = 0; i < poly.size(); ++i)
        cum.push_back(cum.back() + norm(poly[(i + 1) % poly.size()] - poly[i]));
    std::vector<double> f;
    for (std::size_t i = 0; i < poly.size(); ++i) f.push_back(cum[i] / cum.back());
    return f;
}

BorderCurve make_shape(ClothShape s, std::size_t n) {
    if (n < 8) throw Error(ErrorKind::InvalidPolygon, "need at least 8 border segments");
    BorderCurve poly;
    if (s == ClothShape::circle) {
        for (std::size_t k = 0; k < n; ++k) {
            double a = 2.0 * kPi * double(k) / double(n);
            poly.vertices.push_back({std::cos(a), std::sin(a), 0.0});
        }
        return normalize_border(poly);
    }
    for (const Vec2& p : shape_polygon(s)) poly.vertices.push_back({p.x, p.y, 0.0});
    return normalize_border(resample_border(poly, n));
}

namespace {

struct Crossing {
    double fraction; // arc-length fraction from vertex 0
};

int side_sign(double d, double tol = 1e-12) { return d > tol ? 1 : (d < -tol ? -1 : 0); }

// Transversal crossings of the fold line with the closed border, as
// arc-length fractions. A vertex sitting exactly on the line counts as one
// crossing when its nonzero neighbors disagree.
std::vector<Crossing> border_crossings(const BorderCurve& b, const Line2& line,
                                       const std::vector<double>& cum,
                                       const std::vector<double>& d) {
    const std::size_t n = b.vertices.size();
    const double total = cum.back();
    std::vector<Crossing> out;

    for (std::size_t i = 0; i < n; ++i) {
        int si = side_sign(d[i]);
        int sj = side_sign(d[(i + 1) % n]);
        if (si != 0 && sj != 0 && si != sj) {
            double t = d[i] / (d[i] - d[(i + 1) % n]);
            out.push_back({(cum[i] + t * (cum[i + 1] - cum[i])) / total});
        } else if (si == 0) {
            // run of on-line vertices starting at i; count once if the
            // flanking signs disagree
            std::size_t prev = (i + n - 1) % n;
            if (side_sign(d[prev]) == 0) continue; // not the head of the run
            std::size_t k = i;
            while (side_sign(d[(k + 1) % n]) == 0 && k + 1 < i + n) ++k;
            int before = side_sign(d[prev]);
            int after = side_sign(d[(k + 1) % n]);
            if (before != 0 && after != 0 && before != after) out.push_back({cum[i] / total});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Crossing& a, const Crossing& b) { return a.fraction < b.fraction; });
    return out;
}

} // namespace

FoldSample apply_fold(const BorderCurve& b, const FoldSpec& f,
                      const std::vector<double>& corner_fractions) {
    validate_border(b);
    if (f.layer_height <= 0.0) throw Error(ErrorKind::DegenerateInput, "layer_height must be > 0");
    if (norm(f.line.dir) < 1e-12) throw Error(ErrorKind::BadFoldLine, "fold line direction is zero");

    const std::size_t n = b.vertices.size();
    const std::vector<double> cum = cumulative_lengths(b);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = signed_distance(f.line, xy(b.vertices[i]));

    const std::vector<Crossing> crossings = border_crossings(b, f.line, cum, d);
    if (crossings.size() != 2)
        throw Error(ErrorKind::BadFoldLine,
                    "fold line crosses the border " + std::to_string(crossings.size()) +
                        " times, need exactly 2");

    const int folded_sign = f.side == FoldSide::left ? 1 : -1;
    std::vector<char> folded(n, 0);
    std::size_t folded_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        folded[i] = side_sign(d[i]) == folded_sign;
        folded_count += folded[i];
    }
    if (folded_count == 0) throw Error(ErrorKind::EmptyFold, "no vertex on the folded side");

    FoldSample sample;
    sample.start = b;
    sample.end = b;
    for (std::size_t i = 0; i < n; ++i) {
        if (!folded[i]) continue;
        Vec2 r = reflect_point(f.line, xy(b.vertices[i]));
        // raising by (not to) the layer height keeps stacked layers of
        // sequential folds distinct
        sample.end.vertices[i] = {r.x, r.y, b.vertices[i].z + f.layer_height};
    }

    // order (g1, g2) so the anticlockwise (forward) arc g1 -> g2 is folded
    double sa = crossings[0].fraction, sb = crossings[1].fraction;
    std::size_t probe = 0;
    while (probe < n && !folded[probe]) ++probe;
    double u = cum[probe] / cum.back();
    bool forward_arc_folded = (u > sa && u < sb);
    sample.gt_fold = forward_arc_folded ? std::make_pair(2.0 * kPi * sa, 2.0 * kPi * sb)
                                        : std::make_pair(2.0 * kPi * sb, 2.0 * kPi * sa);

    for (std::size_t k = 0; k < corner_fractions.size(); ++k) {
        Vec3 p = point_at_fraction(b, corner_fractions[k]);
        if (side_sign(signed_distance(f.line, xy(p))) == folded_sign)
            sample.gt_folded_corners.push_back(int(k));
    }

    sample.meta.n_segments = n;
    sample.meta.layer_height = f.layer_height;
    return sample;
}

BorderCurve add_noise(const BorderCurve& b, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw Error(ErrorKind::DegenerateInput, "sigma must be >= 0");
    BorderCurve out = b;
    if (sigma > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, sigma);
        for (Vec3& v : out.vertices) {
            v.x += gauss(rng);
            v.y += gauss(rng);
            v.z += gauss(rng);
        }
    }
    return normalize_border(out);
}

std::vector<Vec3> epsilon_cover(const std::vector<Vec3>& points, double eps) {
    if (eps <= 0.0) throw Error(ErrorKind::DegenerateInput, "eps must be > 0");
    if (points.empty()) throw Error(ErrorKind::DegenerateInput, "empty point set");
    std::vector<Vec3> centers;
    for (const Vec3& p : points) {
        bool covered = false;
        for (const Vec3& c : centers) {
            if (dist(p, c) <= eps) {
                covered = true;
                break;
            }
        }
        if (!covered) centers.push_back(p);
    }
    return centers;
}

namespace {

struct Grid {
    int res = 0;
    double minx = 0, miny = 0, sx = 1, sy = 1;
    std::vector<uint8_t> cells;

    bool get(int gx, int gy) const {
        return gx >= 0 && gy >= 0 && gx < res && gy < res && cells[std::size_t(gy) * res + gx];
    }
    void set(int gx, int gy) {
        if (gx >= 0 && gy >= 0 && gx < res && gy < res) cells[std::size_t(gy) * res + gx] = 1;
    }
    Vec2 center(int gx, int gy) const {
        return {minx + (gx + 0.5) * sx, miny + (gy + 0.5) * sy};
    }
};

// Moore-neighbour boundary trace of the component containing `start`,
// clockwise from the lowest-left cell.
std::vector<std::pair<int, int>> moore_trace(const Grid& g, std::pair<int, int> start) {
    static const int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static const int dy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
    std::vector<std::pair<int, int>> boundary;
    boundary.push_back(start);

    int dir = 0; // came from the left scan, start looking rightwards
    std::pair<int, int> cur = start;
    const std::size_t max_steps = std::size_t(g.res) * g.res * 4 + 16;
    for (std::size_t step = 0; step < max_steps; ++step) {
        bool moved = false;
        // search the 8-neighbourhood starting just after the backtrack direction
        for (int k = 0; k < 8; ++k) {
            int probe = (dir + 6 + k) % 8; // turn right relative to entry
            int nx = cur.first + dx[probe], ny = cur.second + dy[probe];
            if (g.get(nx, ny)) {
                cur = {nx, ny};
                dir = probe;
                moved = true;
                break;
            }
        }
        if (!moved) break; // isolated cell
        if (cur == start && boundary.size() > 1) break;
        boundary.push_back(cur);
    }
    return boundary;
}

} // namespace

BorderCurve extract_silhouette_border(const std::vector<Vec3>& mesh_vertices, int grid_res,
                                      double cover_eps) {
    if (mesh_vertices.size() < 100)
        throw Error(ErrorKind::TooSparse,
                    "need at least 100 mesh vertices, got " + std::to_string(mesh_vertices.size()));
    if (grid_res < 32) throw Error(ErrorKind::DegenerateInput, "grid_res must be >= 32");

    double minx = mesh_vertices[0].x, maxx = minx, miny = mesh_vertices[0].y, maxy = miny;
    for (const Vec3& v : mesh_vertices) {
        minx = std::min(minx, v.x);
        maxx = std::max(maxx, v.x);
        miny = std::min(miny, v.y);
        maxy = std::max(maxy, v.y);
    }
    if (maxx - minx < 1e-12 || maxy - miny < 1e-12)
        throw Error(ErrorKind::TooSparse, "degenerate xy extent");

    Grid g;
    g.res = grid_res;
    g.minx = minx;
    g.miny = miny;
    g.sx = (maxx - minx) / grid_res;
    g.sy = (maxy - miny) / grid_res;
    g.cells.assign(std::size_t(grid_res) * grid_res, 0);

    auto cell_of = [&](const Vec3& v) -> std::pair<int, int> {
        int gx = std::min(grid_res - 1, int((v.x - minx) / g.sx));
        int gy = std::min(grid_res - 1, int((v.y - miny) / g.sy));
        return {gx, gy};
    };
    for (const Vec3& v : mesh_vertices) {
        auto [gx, gy] = cell_of(v);
        g.set(gx, gy);
    }

    // 1-cell dilation closes pinholes between samples
    Grid dilated = g;
    for (int gy = 0; gy < grid_res; ++gy)
        for (int gx = 0; gx < grid_res; ++gx)
            if (!g.get(gx, gy)) {
                bool any = false;
                for (int oy = -1; oy <= 1 && !any; ++oy)
                    for (int ox = -1; ox <= 1 && !any; ++ox) any = g.get(gx + ox, gy + oy);
                if (any) dilated.cells[std::size_t(gy) * grid_res + gx] = 1;
            }

    // largest 4-connected component
    std::vector<int> label(dilated.cells.size(), -1);
    int best_label = -1;
    std::size_t best_size = 0;
    int next = 0;
    for (int gy = 0; gy < grid_res; ++gy) {
        for (int gx = 0; gx < grid_res; ++gx) {
            if (!dilated.get(gx, gy) || label[std::size_t(gy) * grid_res + gx] >= 0) continue;
            std::size_t size = 0;
            std::deque<std::pair<int, int>> queue{{gx, gy}};
            label[std::size_t(gy) * grid_res + gx] = next;
            while (!queue.empty()) {
                auto [cx, cy] = queue.front();
                queue.pop_front();
                ++size;
                const int nx4[4] = {cx + 1, cx - 1, cx, cx};
                const int ny4[4] = {cy, cy, cy + 1, cy - 1};
                for (int k = 0; k < 4; ++k) {
                    if (!dilated.get(nx4[k], ny4[k])) continue;
                    int& lab = label[std::size_t(ny4[k]) * grid_res + nx4[k]];
                    if (lab < 0) {
                        lab = next;
                        queue.push_back({nx4[k], ny4[k]});
                    }
                }
            }
            if (size > best_size) {
                best_size = size;
                best_label = next;
            }
            ++next;
        }
    }
    if (best_label < 0) throw Error(ErrorKind::TooSparse, "no occupied cells");

    Grid comp = dilated;
    for (std::size_t k = 0; k < comp.cells.size(); ++k)
        comp.cells[k] = label[k] == best_label ? 1 : 0;

    // boundary trace from the lowest-left component cell
    std::pair<int, int> start{-1, -1};
    for (int gy = 0; gy < grid_res && start.first < 0; ++gy)
        for (int gx = 0; gx < grid_res; ++gx)
            if (comp.get(gx, gy)) {
                start = {gx, gy};
                break;
            }
    std::vector<std::pair<int, int>> boundary = moore_trace(comp, start);
    if (boundary.size() < 8) throw Error(ErrorKind::TooSparse, "boundary trace too short");

    // retrace each boundary cell to the nearest mesh vertex
    std::vector<Vec3> traced;
    traced.reserve(boundary.size());
    for (auto [gx, gy] : boundary) {
        Vec2 c = comp.center(gx, gy);
        double best = std::numeric_limits<double>::infinity();
        Vec3 best_v{};
        for (const Vec3& v : mesh_vertices) {
            double dx = v.x - c.x, dy = v.y - c.y;
            double d2 = dx * dx + dy * dy;
            if (d2 < best) {
                best = d2;
                best_v = v;
            }
        }
        if (traced.empty() || dist(traced.back(), best_v) > 1e-15) traced.push_back(best_v);
    }

    std::vector<Vec3> centers = epsilon_cover(traced, cover_eps);
    if (centers.size() < 8) throw Error(ErrorKind::TooSparse, "epsilon cover left fewer than 8 vertices");

    // nearest-neighbour walk into a closed chain
    const double step_limit = 3.0 * cover_eps;
    std::vector<char> used(centers.size(), 0);
    std::vector<Vec3> chain{centers[0]};
    used[0] = 1;
    for (std::size_t k = 1; k < centers.size(); ++k) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t pick = 0;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            if (used[i]) continue;
            double d2 = dist(chain.back(), centers[i]);
            if (d2 < best) {
                best = d2;
                pick = i;
            }
        }
        if (best > step_limit)
            throw Error(ErrorKind::OpenChain, "nearest-neighbour step exceeds 3*eps; border branches");
        chain.push_back(centers[pick]);
        used[pick] = 1;
    }
    if (dist(chain.back(), chain.front()) > step_limit)
        throw Error(ErrorKind::OpenChain, "chain does not close");

    BorderCurve out;
    out.vertices = std::move(chain);
    validate_border(out);
    return out;
}

std::vector<FoldSample> generate_dataset(const std::vector<DatasetEntry>& entries,
                                         std::size_t count, std::uint64_t seed,
                                         std::size_t n_segments, double layer_height) {
    if (entries.empty()) throw Error(ErrorKind::DegenerateInput, "no dataset entries");
    if (count < 1) throw Error(ErrorKind::DegenerateInput, "count must be >= 1");

    std::vector<FoldSample> samples(count);
    parallel_for(count, [&](std::size_t i) {
        const DatasetEntry& entry = entries[i % entries.size()];
        const std::uint64_t sample_seed = splitmix64(seed ^ splitmix64(i + 1));
        std::mt19937_64 rng(sample_seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        BorderCurve border = make_shape(entry.shape, n_segments);
        const std::vector<double> corners = shape_corner_fractions(entry.shape);

        // ~40% of samples: random in-plane pose before normalization
        if (unit(rng) < 0.4) {
            double a = unit(rng) * 2.0 * kPi;
            double tx = (unit(rng) - 0.5) * 0.6, ty = (unit(rng) - 0.5) * 0.6;
            for (Vec3& v : border.vertices) {
                double x = v.x * std::cos(a) - v.y * std::sin(a) + tx;
                double y = v.x * std::sin(a) + v.y * std::cos(a) + ty;
                v = {x, y, v.z};
            }
            border = normalize_border(border);
        }

        // always drawn, so clean and noisy runs of one seed share fold lines
        const std::uint64_t noise_seed = rng();
        if (entry.sigma > 0.0) border = add_noise(border, entry.sigma, noise_seed);

        const std::size_t n = border.vertices.size();
        const std::size_t min_side =
            std::max<std::size_t>(1, std::size_t(entry.folds.min_side_fraction * double(n)));

        FoldSample sample;
        bool accepted = false;
        for (int attempt = 0; attempt < 500 && !accepted; ++attempt) {
            double beta = unit(rng) * kPi;
            double offset = (2.0 * unit(rng) - 1.0) * entry.folds.max_offset;
            FoldSpec spec;
            spec.line.dir = {std::cos(beta), std::sin(beta)};
            spec.line.point = {-offset * std::sin(beta), offset * std::cos(beta)};
            spec.side = unit(rng) < 0.5 ? FoldSide::left : FoldSide::right;
            spec.layer_height = layer_height;
            try {
                FoldSample candidate = apply_fold(border, spec, corners);
                std::size_t folded = 0;
                for (std::size_t k = 0; k < n; ++k)
                    folded += dist(candidate.start.vertices[k], candidate.end.vertices[k]) > 1e-12;
                if (folded < min_side || n - folded < min_side) continue;
                sample = std::move(candidate);
                accepted = true;
            } catch (const Error&) {
                continue;
            }
        }
        if (!accepted) {
            // deterministic fallback: vertical line through the centroid
            FoldSpec spec;
            spec.line = {{0.0, 0.0}, {0.0, 1.0}};
            spec.side = FoldSide::left;
            spec.layer_height = layer_height;
            sample = apply_fold(border, spec, corners);
        }

        sample.meta.shape = shape_name(entry.shape);
        sample.meta.sigma = entry.sigma;
        sample.meta.seed = sample_seed;
        sample.meta.n_segments = n;
        sample.meta.layer_height = layer_height;
        samples[i] = std::move(sample);
    });
    return samples;
}

} // namespace closet
