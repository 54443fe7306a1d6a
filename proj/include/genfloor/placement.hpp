#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "genfloor/model.hpp"
#include "genfloor/tree.hpp"

namespace genfloor {

struct SpatialBlock {
    int label = 0;  // requirement index
    std::string id;
    Length x = 0;
    Length y = 0;
    Length w = 0;
    Length h = 0;
    bool rotated = false;

    Length x1() const { return x + w; }
    Length y1() const { return y + h; }
    bool operator==(const SpatialBlock&) const = default;
};

/// Horizontal skyline over [0, +inf). Segment i spans [starts[i], starts[i+1])
/// at heights[i]; the last segment is unbounded.
class Contour {
public:
    struct Segment {
        Length x_start;
        Length x_end;  // kInfinity for the last segment
        Length height;
    };
    static constexpr Length kInfinity = INT64_MAX;

    Contour() = default;

    /// Highest contour point over [x, x+w).
    Length max_height(Length x, Length w) const;
    /// Rests a w-by-h block at x on the contour, raises [x, x+w) to its top and
    /// returns the block's y.
    Length place(Length x, Length w, Length h);
    std::vector<Segment> segments() const;

private:
    std::vector<Length> starts_{0};
    std::vector<Length> heights_{0};
};

struct Floorplan {
    std::vector<SpatialBlock> blocks;  // placement order
    LayoutTree tree;
    Method representation = Method::bstar_available_nodes;

    /// Block for a requirement index, or nullptr.
    const SpatialBlock* find(int label) const;
    bool operator==(const Floorplan&) const = default;
};

/// One flag per requirement; a set flag swaps (w,h) of a rotatable requirement
/// and is ignored otherwise. An empty vector means no rotations.
using Rotations = std::vector<bool>;

/// Binary tree: left child to the right of its parent, right child at the
/// parent's x; y from the contour, placement in preorder.
Floorplan place_bstar(const LayoutTree& tree, const std::vector<SpatialRequirement>& reqs, const Rotations& rotations = {});
/// N-ary tree whose synthetic root is the left boundary (x = 0, w = 0); every
/// child starts at its parent's right edge.
Floorplan place_otree(const LayoutTree& tree, const std::vector<SpatialRequirement>& reqs, const Rotations& rotations = {});
/// Dispatches on the tree kind.
Floorplan place(const LayoutTree& tree, const std::vector<SpatialRequirement>& reqs, const Rotations& rotations,
                Method representation);

bool interiors_overlap(const SpatialBlock& a, const SpatialBlock& b);

}  // namespace genfloor
