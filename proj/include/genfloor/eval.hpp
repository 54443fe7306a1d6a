#pragma once

#include <set>
#include <utility>
#include <vector>

#include "genfloor/model.hpp"
#include "genfloor/placement.hpp"

namespace genfloor {

/// Unordered requirement-index pair, stored with first < second.
using LabelPair = std::pair<int, int>;

struct GoalCheck {
    AdjacencyGoal goal;
    bool achieved = false;
};

struct AdjacencyReport {
    std::set<LabelPair> resulted;
    std::vector<GoalCheck> per_goal;
    int achieved_count = 0;
};

/// Pairs whose rectangles share an edge segment longer than `min_shared`.
/// Corner contact never counts.
std::set<LabelPair> resulted_adjacency(const Floorplan& fp, Length min_shared = 0);
bool blocks_adjacent(const SpatialBlock& a, const SpatialBlock& b, Length min_shared = 0);

AdjacencyReport adjacency_check(const std::set<LabelPair>& resulted, const std::vector<AdjacencyGoal>& goals);

struct BoundingBox {
    Length x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    Length width() const { return x1 - x0; }
    Length height() const { return y1 - y0; }
    /// Area in square input units.
    double area() const { return from_micro(width()) * from_micro(height()); }
};

BoundingBox bounding_area(const Floorplan& fp);

/// Euclidean gap between two rectangles in input units; 0 when they touch
/// or overlap.
double rect_distance(const SpatialBlock& a, const SpatialBlock& b);
double closest_distance(const SpatialBlock& block, const std::vector<SpatialBlock>& others);

struct ContainmentReport {
    bool all_inside = true;
    std::vector<bool> per_block;
};

/// A block is inside when its four corners are inside or on the polygon and
/// no polygon edge passes through its interior.
ContainmentReport within_boundary(const Floorplan& fp, const std::vector<Point>& polygon);

}  // namespace genfloor
