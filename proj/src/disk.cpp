#include "closet/disk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "closet/error.hpp"
#include "closet/parallel.hpp"

namespace closet {

DiskGrid::DiskGrid(std::size_t n_segments)
    : n_(n_segments), layers_(n_segments / 2), val_(n_ * layers_, 0.0), occ_(n_ * layers_, 0) {}

std::vector<DiskCell> DiskGrid::cells() const {
    std::vector<DiskCell> out;
    out.reserve(val_.size());
    for (int l = 1; l <= int(layers_); ++l)
        for (std::size_t i = 0; i < n_; ++i)
            if (occupied(i, l))
                out.push_back({anchor_index(i, l), l, radius(l), angle(i, l), value(i, l)});
    return out;
}

double DiskGrid::max_abs_value() const {
    double m = 0.0;
    for (std::size_t k = 0; k < val_.size(); ++k)
        if (occ_[k]) m = std::max(m, std::abs(val_[k]));
    return m;
}

std::pair<int, int> map_to_disk(std::size_t i, std::size_t j, std::size_t n) {
    if (i == j) throw Error(ErrorKind::DegenerateInput, "segment paired with itself");
    if (i >= n || j >= n) throw Error(ErrorKind::DegenerateInput, "segment index out of range");
    const std::size_t a = std::min(i, j), b = std::max(i, j);
    const std::size_t d = b - a;
    const std::size_t layer = std::min(d, n - d);
    // Shorter arc a..b runs directly when d < n-d; it wraps through index 0
    // when d > n-d. Equal arcs (even n, diametral pair) take the direct arc
    // starting at the smaller index.
    std::size_t anchor = (d <= n - d) ? (a + b) % (2 * n) : (a + b + n) % (2 * n);
    return {int(anchor), int(layer)};
}

std::size_t anchor_to_storage(int anchor, int layer, std::size_t n) {
    // anchor and layer always share parity
    return std::size_t(anchor - (layer & 1)) / 2 % n;
}

std::pair<std::size_t, std::size_t> pair_from_cell(std::size_t storage_i, int layer, std::size_t n) {
    // anchor = 2i + l (mod 2n) for the pair (i, i+l); invert for i.
    const int anchor = int(2 * storage_i) + (layer & 1);
    long i2 = anchor - layer; // = 2i mod 2n
    if (i2 < 0) i2 += long(2 * n);
    const std::size_t i = std::size_t(i2) / 2;
    return {i, (i + std::size_t(layer)) % n};
}

DGLIDisk compute_disk(const BorderCurve& b, double eps) {
    validate_border(b);
    const std::size_t n = b.segment_count();
    DGLIDisk disk(n);

    struct Pair {
        std::size_t i, j, storage;
        int layer;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto [anchor, layer] = map_to_disk(i, j, n);
            // even n: pair (i, i+n/2) appears once with i < j, occupying n/2 cells
            pairs.push_back({i, j, anchor_to_storage(anchor, layer, n), layer});
        }
    }

    std::vector<std::string> errors(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t k) {
        const Pair& p = pairs[k];
        try {
            double v = dgli(b.segment(p.i), b.segment(p.j), eps);
            if (!std::isfinite(v)) throw Error(ErrorKind::DegenerateConfiguration, "non-finite dGLI");
            disk.set(p.storage, p.layer, v);
        } catch (const Error& e) {
            errors[k] = "segment pair (" + std::to_string(p.i) + ", " + std::to_string(p.j) +
                        "): " + e.what();
        }
    });
    for (const std::string& msg : errors)
        if (!msg.empty()) throw Error(ErrorKind::DegenerateConfiguration, msg);
    return disk;
}

namespace {

DiskDiff diff_impl(const DGLIDisk& start, const DGLIDisk& end, DiffKind kind) {
    if (start.segments() != end.segments())
        throw Error(ErrorKind::DimensionMismatch,
                    "disk sizes differ: " + std::to_string(start.segments()) + " vs " +
                        std::to_string(end.segments()));
    DiskDiff out{DiskGrid(start.segments()), kind};
    for (int l = 1; l <= int(start.layers()); ++l) {
        for (std::size_t i = 0; i < start.segments(); ++i) {
            if (!start.occupied(i, l)) continue;
            double s = start.value(i, l), e = end.value(i, l);
            double v = kind == DiffKind::abs_diff ? std::abs(std::abs(e) - std::abs(s)) : e - s;
            out.grid.set(i, l, v);
        }
    }
    return out;
}

} // namespace

DiskDiff disk_abs_diff(const DGLIDisk& start, const DGLIDisk& end) {
    return diff_impl(start, end, DiffKind::abs_diff);
}

DiskDiff disk_signed_diff(const DGLIDisk& start, const DGLIDisk& end) {
    return diff_impl(start, end, DiffKind::signed_diff);
}

namespace {

void heat_color(double t, uint8_t* px) {
    // t in [-1, 1]; white at 0, orange for positive, blue for negative
    t = std::clamp(t, -1.0, 1.0);
    double r, g, bl;
    if (t >= 0.0) {
        r = 255.0;
        g = 255.0 - t * (255.0 - 110.0);
        bl = 255.0 - t * 255.0;
    } else {
        r = 255.0 + t * 255.0;
        g = 255.0 + t * (255.0 - 110.0);
        bl = 255.0;
    }
    px[0] = uint8_t(std::lround(std::clamp(r, 0.0, 255.0)));
    px[1] = uint8_t(std::lround(std::clamp(g, 0.0, 255.0)));
    px[2] = uint8_t(std::lround(std::clamp(bl, 0.0, 255.0)));
}

} // namespace

Image render_disk(const DiskGrid& d, int size) {
    if (size < 64) throw Error(ErrorKind::DegenerateInput, "raster size must be >= 64");
    Image img;
    img.width = img.height = size;
    img.rgb.assign(std::size_t(size) * size * 3, 255);

    const std::size_t n = d.segments();
    if (n == 0) return img;
    const int layers = int(d.layers());
    const double vmax = d.max_abs_value();
    const double band = 1.0 / layers;                    // radial cell height
    const double outer = 1.0 + 0.5 * band;               // outer edge of layer 1
    const double scale = (0.5 * size - 1.0) / outer;     // world -> pixel
    const double cx = 0.5 * size, cy = 0.5 * size;
    const double sector = kPi / double(n); // half angular cell width

    for (int py = 0; py < size; ++py) {
        for (int px = 0; px < size; ++px) {
            const double x = (px + 0.5 - cx) / scale;
            const double y = (cy - (py + 0.5)) / scale;
            const double r = std::hypot(x, y);
            if (r >= outer || r <= 0.0) continue;
            // layer whose band contains r: radius(l) = 1 - (l-1)/L
            int l = int(std::lround((1.0 - r) * layers + 1.0));
            if (l < 1 || l > layers) continue;
            const double phi = wrap_angle_2pi(std::atan2(y, x));
            // nearest anchor of this layer's parity on the 2n grid
            const double apos = phi * double(n) / kPi;
            long nearest = std::lround((apos - (l & 1)) / 2.0);
            std::size_t i = std::size_t((nearest % long(n) + long(n)) % long(n));
            if (!d.occupied(i, l)) continue;
            if (angle_dist(phi, d.angle(i, l)) > sector) continue;
            double t = vmax > 0.0 ? d.value(i, l) / vmax : 0.0;
            heat_color(t, &img.rgb[(std::size_t(py) * size + px) * 3]);
        }
    }
    return img;
}

Image render_disk(const DiskDiff& d, int size) { return render_disk(d.grid, size); }

void write_ppm(const std::string& path, const Image& img, const std::string& comment) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::DegenerateInput, "cannot open " + path + " for writing");
    f << "P6\n";
    if (!comment.empty()) f << "# " << comment << "\n";
    f << img.width << " " << img.height << "\n255\n";
    f.write(reinterpret_cast<const char*>(img.rgb.data()), std::streamsize(img.rgb.size()));
}

std::string disk_to_csv(const DiskGrid& d, const std::string& comment) {
    std::string out;
    if (!comment.empty()) out += "# " + comment + "\n";
    out += "anchor_index,layer,radius,angle,value\n";
    char buf[128];
    for (const DiskCell& c : d.cells()) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g\n", c.anchor, c.layer, c.radius,
                      c.angle, c.value);
        out += buf;
    }
    return out;
}

} // namespace closet
