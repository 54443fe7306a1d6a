#pragma once

#include <optional>
#include <string>
#include <vector>

#include "genfloor/model.hpp"
#include "genfloor/placement.hpp"

namespace genfloor {

struct Rect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool contains(const Rect& r) const { return x0 <= r.x0 && y0 <= r.y0 && r.x1 <= x1 && r.y1 <= y1; }
    bool operator==(const Rect&) const = default;
};

bool interiors_overlap(const Rect& a, const Rect& b);

struct ExtendedBlock {
    int label = 0;
    std::string id;
    Rect scaled;  // after step (ii)
    Rect rect;    // after growth
    Length fixed_w = 0;  // placed size before scaling
    Length fixed_h = 0;
};

struct ExtendedLayout {
    Rect boundary;
    std::vector<ExtendedBlock> blocks;  // placement order; empty when penalized
    bool penalty = false;
    double sx = 1.0;
    double sy = 1.0;

    /// Sum of extended areas over the boundary area.
    double coverage() const;
};

/// Scales the layout's bounding box onto a width-by-height boundary anchored at
/// the origin, then grows every block (placement order; right, up, left,
/// down) until it meets another block or the boundary. A layout that must
/// shrink while holding a non-flexible requirement is penalized instead.
ExtendedLayout extend_layout(const Floorplan& fp, const std::vector<SpatialRequirement>& reqs, double width, double height);

struct AllocatedBlock {
    int label = 0;
    std::string id;
    Rect rect;
    bool flexible = true;
    bool feasible = true;
    std::optional<Edge> facing;
};

struct AllocatedLayout {
    Rect boundary;
    std::vector<AllocatedBlock> blocks;
};

/// Flexible requirements take their whole extended block. Fixed ones keep
/// their size, flush against anchor_edge and centred along it, or centred
/// when unanchored; a fixed block larger than its area is flagged infeasible.
AllocatedLayout allocate_fixed_blocks(const ExtendedLayout& ex, const std::vector<SpatialRequirement>& reqs);

}  // namespace genfloor
