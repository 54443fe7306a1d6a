#pragma once

#include <string>
#include <vector>

#include "genfloor/model.hpp"
#include "genfloor/placement.hpp"
#include "genfloor/tree.hpp"

namespace genfloor {

enum class RenderKind { floorplan, bubble, tree };

std::string_view to_string(RenderKind k);
RenderKind parse_render_kind(std::string_view s);

struct RenderSpec {
    RenderKind kind = RenderKind::floorplan;
    int size = 640;  // longer side of the drawing, in pixels
    std::string achieved = "#2e7d32";
    std::string missed = "#c62828";
    std::string fill = "#e8eef7";
    std::string stroke = "#34495e";

    void validate() const;
};

/// One <rect class="block"> per block with its id as a label.
std::string render_floorplan_svg(const Floorplan& fp, const RenderSpec& spec = {});

/// One <circle> per block at its centroid. Every goal entry is drawn as a
/// half edge from its first space to the pair's midpoint, so a pair shows as
/// one line in two halves, each coloured achieved or missed.
std::string render_bubble_svg(const Floorplan& fp, const std::vector<AdjacencyGoal>& goal_entries,
                              const RenderSpec& spec = {});

/// Layered drawing by depth. Binary children sit left or right of their
/// parent by slot; the n-ary root is drawn as D0. `reqs` supplies names and
/// may be empty.
std::string render_tree_svg(const LayoutTree& tree, const RenderSpec& spec = {},
                            const std::vector<SpatialRequirement>& reqs = {});

/// Dispatches on spec.kind; `goal_entries` is only used for bubbles.
std::string render_svg(const Floorplan& fp, const std::vector<AdjacencyGoal>& goal_entries, const RenderSpec& spec,
                       const std::vector<SpatialRequirement>& reqs = {});

}  // namespace genfloor
