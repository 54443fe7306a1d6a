#include "genfloor/placement.hpp"

#include <algorithm>
#include <stdexcept>

namespace genfloor {

Length Contour::max_height(Length x, Length w) const
{
    const Length end = x + w;
    // first segment whose start is > x, minus one, contains x
    auto it = std::upper_bound(starts_.begin(), starts_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - starts_.begin()) - 1;
    Length best = 0;
    for (; i < starts_.size() && starts_[i] < end; ++i) best = std::max(best, heights_[i]);
    return best;
}

Length Contour::place(Length x, Length w, Length h)
{
    if (w <= 0 || x < 0) throw std::invalid_argument("contour placement needs x >= 0 and w > 0");
    const Length y = max_height(x, w);
    const Length end = x + w;

    // height the contour resumes at after `end`
    auto at = [&](Length pos) {
        auto it = std::upper_bound(starts_.begin(), starts_.end(), pos);
        return heights_[static_cast<std::size_t>(it - starts_.begin()) - 1];
    };
    const Length resume = at(end);

    std::vector<Length> starts;
    std::vector<Length> heights;
    for (std::size_t i = 0; i < starts_.size() && starts_[i] < x; ++i) {
        starts.push_back(starts_[i]);
        heights.push_back(heights_[i]);
    }
    starts.push_back(x);
    heights.push_back(y + h);
    starts.push_back(end);
    heights.push_back(resume);
    for (std::size_t i = 0; i < starts_.size(); ++i) {
        if (starts_[i] > end) {
            starts.push_back(starts_[i]);
            heights.push_back(heights_[i]);
        }
    }
    // merge equal neighbours
    starts_.clear();
    heights_.clear();
    for (std::size_t i = 0; i < starts.size(); ++i) {
        if (!heights_.empty() && heights_.back() == heights[i]) continue;
        starts_.push_back(starts[i]);
        heights_.push_back(heights[i]);
    }
    return y;
}

std::vector<Contour::Segment> Contour::segments() const
{
    std::vector<Segment> out;
    for (std::size_t i = 0; i < starts_.size(); ++i)
        out.push_back({starts_[i], i + 1 < starts_.size() ? starts_[i + 1] : kInfinity, heights_[i]});
    return out;
}

const SpatialBlock* Floorplan::find(int label) const
{
    for (const auto& b : blocks)
        if (b.label == label) return &b;
    return nullptr;
}

bool interiors_overlap(const SpatialBlock& a, const SpatialBlock& b)
{
    return a.x < b.x1() && b.x < a.x1() && a.y < b.y1() && b.y < a.y1();
}

namespace {

SpatialBlock sized_block(NodeId node, const std::vector<SpatialRequirement>& reqs, const Rotations& rotations)
{
    const int label = LayoutTree::requirement_index(node);
    if (label < 0 || label >= static_cast<int>(reqs.size()))
        throw ValidationError("tree node D" + std::to_string(node) + " has no matching requirement");
    const auto& r = reqs[label];
    SpatialBlock b;
    b.label = label;
    b.id = r.id;
    b.w = r.width;
    b.h = r.height;
    if (r.rotatable && label < static_cast<int>(rotations.size()) && rotations[label]) {
        std::swap(b.w, b.h);
        b.rotated = true;
    }
    return b;
}

void check_sizes(const LayoutTree& tree, const std::vector<SpatialRequirement>& reqs)
{
    if (tree.size() != static_cast<int>(reqs.size()))
        throw ValidationError("tree has " + std::to_string(tree.size()) + " labeled nodes but there are " +
                              std::to_string(reqs.size()) + " requirements");
}

}  // namespace

Floorplan place_bstar(const LayoutTree& tree, const std::vector<SpatialRequirement>& reqs, const Rotations& rotations)
{
    if (tree.kind() != TreeKind::binary) throw ValidationError("B*-tree placement needs a binary tree");
    check_sizes(tree, reqs);
    Floorplan fp;
    fp.tree = tree;
    fp.representation = Method::bstar_available_nodes;
    Contour contour;
    std::vector<SpatialBlock> by_node(tree.size() + 1);
    for (NodeId id : dfs_order(tree)) {
        SpatialBlock b = sized_block(id, reqs, rotations);
        NodeId p = tree.parent(id);
        if (p == kNoNode) {
            b.x = 0;
        } else if (tree.left(p) == id) {
            b.x = by_node[p].x1();
        } else {
            b.x = by_node[p].x;
        }
        b.y = contour.place(b.x, b.w, b.h);
        by_node[id] = b;
        fp.blocks.push_back(b);
    }
    return fp;
}

Floorplan place_otree(const LayoutTree& tree, const std::vector<SpatialRequirement>& reqs, const Rotations& rotations)
{
    if (tree.kind() != TreeKind::nary) throw ValidationError("O-tree placement needs an n-ary tree");
    check_sizes(tree, reqs);
    Floorplan fp;
    fp.tree = tree;
    fp.representation = Method::otree_proceeding;
    Contour contour;
    std::vector<Length> right_edge(tree.size() + 1, 0);  // D0 is the zero-width left boundary
    for (NodeId id : dfs_order(tree)) {
        if (id == tree.root()) continue;
        SpatialBlock b = sized_block(id, reqs, rotations);
        b.x = right_edge[tree.parent(id)];
        b.y = contour.place(b.x, b.w, b.h);
        right_edge[id] = b.x1();
        fp.blocks.push_back(b);
    }
    return fp;
}

Floorplan place(const LayoutTree& tree, const std::vector<SpatialRequirement>& reqs, const Rotations& rotations,
                Method representation)
{
    Floorplan fp = tree.kind() == TreeKind::nary ? place_otree(tree, reqs, rotations) : place_bstar(tree, reqs, rotations);
    fp.representation = representation;
    return fp;
}

}  // namespace genfloor
