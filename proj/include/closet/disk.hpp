#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "closet/geometry.hpp"

namespace closet {

// One anchor/layer cell of a disk, with its polar coordinates.
struct DiskCell {
    int anchor = 0; // index on the 2N angular grid
    int layer = 0;  // 1 = outermost
    double radius = 0.0;
    double angle = 0.0;
    double value = 0.0;
};

// Circular re-arrangement of the all-pairs dGLI table. Layer l holds the
// pairs at circular index distance l; the anchor is the midpoint of the
// shorter arc between the two segments, kept exact on a 2N angular grid.
// Cells are stored densely per (storage index, layer); for even N the
// diametral layer occupies only N/2 cells and the rest stay unoccupied.
class DiskGrid {
public:
    DiskGrid() = default;
    DiskGrid(std::size_t n_segments);

    std::size_t segments() const { return n_; }
    std::size_t layers() const { return layers_; }

    double radius(int layer) const { return 1.0 - double(layer - 1) / double(layers_); }
    double angle(std::size_t i, int layer) const {
        return kPi * double(2 * i + (layer & 1)) / double(n_);
    }
    int anchor_index(std::size_t i, int layer) const { return int(2 * i) + (layer & 1); }

    bool occupied(std::size_t i, int layer) const { return occ_[idx(i, layer)] != 0; }
    double value(std::size_t i, int layer) const { return val_[idx(i, layer)]; }
    void set(std::size_t i, int layer, double v) {
        val_[idx(i, layer)] = v;
        occ_[idx(i, layer)] = 1;
    }

    // Occupied cells in deterministic (layer, anchor) order.
    std::vector<DiskCell> cells() const;

    double max_abs_value() const;

private:
    std::size_t idx(std::size_t i, int layer) const { return (std::size_t(layer) - 1) * n_ + i; }

    std::size_t n_ = 0;
    std::size_t layers_ = 0;
    std::vector<double> val_;
    std::vector<uint8_t> occ_;
};

using DGLIDisk = DiskGrid;

enum class DiffKind { abs_diff, signed_diff };

struct DiskDiff {
    DiskGrid grid;
    DiffKind kind = DiffKind::abs_diff;
};

// Cell for an unordered segment pair: layer = circular distance,
// anchor = shorter-arc midpoint on the 2N grid (ties at the diametral
// distance take the arc starting at the smaller index).
// Returns {anchor, layer}. Rejects i == j.
std::pair<int, int> map_to_disk(std::size_t i, std::size_t j, std::size_t n);

// Storage column for an anchor returned by map_to_disk.
std::size_t anchor_to_storage(int anchor, int layer, std::size_t n);

// Inverse of map_to_disk: the unordered pair {a, b} of a cell.
std::pair<std::size_t, std::size_t> pair_from_cell(std::size_t storage_i, int layer, std::size_t n);

// All-pairs dGLI over the border segments, arranged on the disk.
// Pairs are evaluated independently (parallel when allowed) and the result
// does not depend on evaluation order.
DGLIDisk compute_disk(const BorderCurve& b, double eps = kDefaultDgliEps);

DiskDiff disk_abs_diff(const DGLIDisk& start, const DGLIDisk& end);
DiskDiff disk_signed_diff(const DGLIDisk& start, const DGLIDisk& end);

// 8-bit RGB raster, row-major, top row first.
struct Image {
    int width = 0, height = 0;
    std::vector<uint8_t> rgb;
};

// Heat map of the disk: white = 0, warm = positive, cool = negative,
// linear scale symmetric about 0. Cells drawn as annular sectors.
Image render_disk(const DiskGrid& d, int size);
Image render_disk(const DiskDiff& d, int size);

// Binary P6 pixmap. `comment` lines are embedded into the header.
void write_ppm(const std::string& path, const Image& img, const std::string& comment = {});

// CSV dump: anchor_index,layer,radius,angle,value.
std::string disk_to_csv(const DiskGrid& d, const std::string& comment = {});

} // namespace closet
