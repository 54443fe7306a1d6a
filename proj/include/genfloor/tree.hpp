#pragma once

#include <string>
#include <vector>

#include "genfloor/model.hpp"

namespace genfloor {

/// Node ids follow the D_i naming: labeled nodes are 1..n and map to
/// requirement index id-1. In the n-ary kind node 0 is the synthetic root
/// that stands for the left boundary and carries no requirement.
using NodeId = int;
inline constexpr NodeId kNoNode = -1;

enum class Side { left, right };

class LayoutTree {
public:
    LayoutTree() = default;

    TreeKind kind() const { return kind_; }
    /// Number of labeled nodes (n), excluding the synthetic n-ary root.
    int size() const { return n_; }
    NodeId root() const { return root_; }
    bool contains(NodeId id) const;

    NodeId parent(NodeId id) const { return parent_.at(id); }
    NodeId left(NodeId id) const { return left_.at(id); }
    NodeId right(NodeId id) const { return right_.at(id); }
    NodeId child(NodeId id, Side side) const { return side == Side::left ? left(id) : right(id); }
    /// Ordered children: the n-ary child list, or the occupied binary slots
    /// left before right.
    std::vector<NodeId> children(NodeId id) const;
    /// Which slot of its parent a binary node occupies; left for the root.
    Side side_in_parent(NodeId id) const;
    int depth(NodeId id) const;

    static int requirement_index(NodeId id) { return id - 1; }
    static NodeId node_for(int requirement_index) { return requirement_index + 1; }
    /// All member ids in ascending order.
    std::vector<NodeId> nodes() const;

    // -- binary edits ------------------------------------------------------
    /// Exchanges the positions of two labels; the shape is unchanged.
    void swap_positions(NodeId a, NodeId b);
    /// Unlinks a childless node. It stays out of the tree until re-attached.
    void detach_leaf(NodeId id);
    /// Links a detached node between `x` and its parent; `x` keeps its side.
    void insert_above(NodeId detached, NodeId x);
    /// Links a detached node in the given slot of `x`; a previous occupant
    /// becomes the detached node's child on the same side.
    void attach(NodeId detached, NodeId x, Side side);

    // -- n-ary edits -------------------------------------------------------
    /// Detaches `node` with its subtree and appends it as the rightmost child
    /// of `new_parent`.
    void move_subtree(NodeId node, NodeId new_parent);

    /// Throws std::logic_error when a structural invariant is broken.
    void check_invariants() const;

    bool operator==(const LayoutTree&) const = default;

    friend LayoutTree build_standard_tree(int n, TreeKind kind);
    friend LayoutTree tree_from_links(TreeKind kind, NodeId root, const std::vector<NodeId>& parent,
                                      const std::vector<NodeId>& left, const std::vector<NodeId>& right,
                                      const std::vector<std::vector<NodeId>>& children);

private:
    void require_binary() const;
    void require_detached(NodeId id) const;

    TreeKind kind_ = TreeKind::binary;
    int n_ = 0;
    NodeId root_ = kNoNode;
    std::vector<NodeId> parent_;
    std::vector<NodeId> left_;
    std::vector<NodeId> right_;
    std::vector<std::vector<NodeId>> children_;
};

/// Complete binary tree with D1 at the root (node k has children 2k, 2k+1),
/// or the single-level n-ary tree D0 -> D1..Dn.
LayoutTree build_standard_tree(int n, TreeKind kind);
LayoutTree build_standard_tree(const Problem& problem);

/// Builds a tree from explicit links and validates it. `children` is used for
/// the n-ary kind, `left`/`right` for the binary kind.
LayoutTree tree_from_links(TreeKind kind, NodeId root, const std::vector<NodeId>& parent,
                           const std::vector<NodeId>& left, const std::vector<NodeId>& right,
                           const std::vector<std::vector<NodeId>>& children);

/// Preorder, children left to right.
std::vector<NodeId> dfs_order(const LayoutTree& tree);
/// Level order, left to right within a level.
std::vector<NodeId> bfs_order(const LayoutTree& tree);
/// True iff `node` lies strictly below `ancestor`.
bool is_descendant(const LayoutTree& tree, NodeId ancestor, NodeId node);

/// Compact text form used in diagnostics and tests: binary `id(left,right)`,
/// n-ary `id[child child ...]`.
std::string to_bracket_string(const LayoutTree& tree);

}  // namespace genfloor
