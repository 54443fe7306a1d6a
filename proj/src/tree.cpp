#include "genfloor/tree.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace genfloor {

bool LayoutTree::contains(NodeId id) const
{
    if (kind_ == TreeKind::nary) return id >= 0 && id <= n_;
    return id >= 1 && id <= n_;
}

std::vector<NodeId> LayoutTree::children(NodeId id) const
{
    if (kind_ == TreeKind::nary) return children_.at(id);
    std::vector<NodeId> out;
    if (left_.at(id) != kNoNode) out.push_back(left_[id]);
    if (right_.at(id) != kNoNode) out.push_back(right_[id]);
    return out;
}

Side LayoutTree::side_in_parent(NodeId id) const
{
    NodeId p = parent_.at(id);
    if (p == kNoNode) return Side::left;
    return left_[p] == id ? Side::left : Side::right;
}

int LayoutTree::depth(NodeId id) const
{
    int d = 0;
    for (NodeId p = parent_.at(id); p != kNoNode; p = parent_[p]) ++d;
    return d;
}

std::vector<NodeId> LayoutTree::nodes() const
{
    std::vector<NodeId> out;
    for (NodeId id = kind_ == TreeKind::nary ? 0 : 1; id <= n_; ++id) out.push_back(id);
    return out;
}

void LayoutTree::require_binary() const
{
    if (kind_ != TreeKind::binary) throw std::logic_error("binary edit on an n-ary tree");
}

void LayoutTree::require_detached(NodeId id) const
{
    if (parent_.at(id) != kNoNode || root_ == id || left_[id] != kNoNode || right_[id] != kNoNode)
        throw std::logic_error("node " + std::to_string(id) + " is not detached");
}

void LayoutTree::swap_positions(NodeId a, NodeId b)
{
    require_binary();
    if (a == b) return;
    auto relabel = [a, b](NodeId x) { return x == a ? b : x == b ? a : x; };
    for (NodeId id = 1; id <= n_; ++id) {
        parent_[id] = relabel(parent_[id]);
        left_[id] = relabel(left_[id]);
        right_[id] = relabel(right_[id]);
    }
    std::swap(parent_[a], parent_[b]);
    std::swap(left_[a], left_[b]);
    std::swap(right_[a], right_[b]);
    root_ = relabel(root_);
}

void LayoutTree::detach_leaf(NodeId id)
{
    require_binary();
    if (left_.at(id) != kNoNode || right_[id] != kNoNode) throw std::logic_error("detach_leaf on an inner node");
    NodeId p = parent_[id];
    if (p == kNoNode) {
        if (root_ == id) root_ = kNoNode;
        return;
    }
    (left_[p] == id ? left_[p] : right_[p]) = kNoNode;
    parent_[id] = kNoNode;
}

void LayoutTree::insert_above(NodeId detached, NodeId x)
{
    require_binary();
    require_detached(detached);
    NodeId p = parent_.at(x);
    Side side = side_in_parent(x);
    if (p == kNoNode) {
        root_ = detached;
    } else {
        (left_[p] == x ? left_[p] : right_[p]) = detached;
    }
    parent_[detached] = p;
    (side == Side::left ? left_[detached] : right_[detached]) = x;
    parent_[x] = detached;
}

void LayoutTree::attach(NodeId detached, NodeId x, Side side)
{
    require_binary();
    require_detached(detached);
    NodeId& slot = side == Side::left ? left_.at(x) : right_.at(x);
    NodeId previous = slot;
    slot = detached;
    parent_[detached] = x;
    if (previous != kNoNode) {
        (side == Side::left ? left_[detached] : right_[detached]) = previous;
        parent_[previous] = detached;
    }
}

void LayoutTree::move_subtree(NodeId node, NodeId new_parent)
{
    if (kind_ != TreeKind::nary) throw std::logic_error("move_subtree on a binary tree");
    if (node == root_) throw std::logic_error("cannot move the n-ary root");
    if (!contains(new_parent) || !contains(node)) throw std::out_of_range("unknown node");
    auto& siblings = children_[parent_[node]];
    siblings.erase(std::find(siblings.begin(), siblings.end(), node));
    children_[new_parent].push_back(node);
    parent_[node] = new_parent;
}

void LayoutTree::check_invariants() const
{
    auto fail = [](const std::string& what) { throw std::logic_error("invalid tree: " + what); };
    if (!contains(root_)) fail("root missing");
    if (parent_[root_] != kNoNode) fail("root has a parent");
    if (kind_ == TreeKind::nary && root_ != 0) fail("n-ary root must be D0");
    std::vector<int> seen(n_ + 1, 0);
    std::deque<NodeId> queue{root_};
    int visited = 0;
    while (!queue.empty()) {
        NodeId id = queue.front();
        queue.pop_front();
        if (seen[id]++) fail("cycle or shared child at " + std::to_string(id));
        ++visited;
        for (NodeId c : children(id)) {
            if (!contains(c)) fail("dangling child");
            if (parent_[c] != id) fail("parent link mismatch at " + std::to_string(c));
            queue.push_back(c);
        }
    }
    int expected = kind_ == TreeKind::nary ? n_ + 1 : n_;
    if (visited != expected) fail("unreachable nodes");
}

LayoutTree build_standard_tree(int n, TreeKind kind)
{
    if (n < 1) throw ValidationError("a standard tree needs at least one node");
    LayoutTree t;
    t.kind_ = kind;
    t.n_ = n;
    t.parent_.assign(n + 1, kNoNode);
    t.left_.assign(n + 1, kNoNode);
    t.right_.assign(n + 1, kNoNode);
    t.children_.assign(n + 1, {});
    if (kind == TreeKind::binary) {
        t.root_ = 1;
        for (NodeId k = 1; k <= n; ++k) {
            if (2 * k <= n) {
                t.left_[k] = 2 * k;
                t.parent_[2 * k] = k;
            }
            if (2 * k + 1 <= n) {
                t.right_[k] = 2 * k + 1;
                t.parent_[2 * k + 1] = k;
            }
        }
    } else {
        t.root_ = 0;
        for (NodeId k = 1; k <= n; ++k) {
            t.children_[0].push_back(k);
            t.parent_[k] = 0;
        }
    }
    return t;
}

LayoutTree build_standard_tree(const Problem& problem)
{
    return build_standard_tree(static_cast<int>(problem.size()), tree_kind_for(problem.representation));
}

LayoutTree tree_from_links(TreeKind kind, NodeId root, const std::vector<NodeId>& parent,
                           const std::vector<NodeId>& left, const std::vector<NodeId>& right,
                           const std::vector<std::vector<NodeId>>& children)
{
    if (parent.size() < 2) throw ValidationError("tree needs at least one labeled node");
    LayoutTree t;
    t.kind_ = kind;
    t.n_ = static_cast<int>(parent.size()) - 1;
    t.root_ = root;
    t.parent_ = parent;
    t.left_ = kind == TreeKind::binary ? left : std::vector<NodeId>(parent.size(), kNoNode);
    t.right_ = kind == TreeKind::binary ? right : std::vector<NodeId>(parent.size(), kNoNode);
    t.children_ = kind == TreeKind::nary ? children : std::vector<std::vector<NodeId>>(parent.size());
    if (t.left_.size() != parent.size() || t.right_.size() != parent.size() || t.children_.size() != parent.size())
        throw ValidationError("tree link arrays disagree in size");
    try {
        t.check_invariants();
    } catch (const std::logic_error& e) {
        throw ValidationError(e.what());
    }
    return t;
}

std::vector<NodeId> dfs_order(const LayoutTree& tree)
{
    std::vector<NodeId> out;
    std::vector<NodeId> stack{tree.root()};
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        out.push_back(id);
        auto kids = tree.children(id);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

std::vector<NodeId> bfs_order(const LayoutTree& tree)
{
    std::vector<NodeId> out{tree.root()};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (NodeId c : tree.children(out[i])) out.push_back(c);
    }
    return out;
}

bool is_descendant(const LayoutTree& tree, NodeId ancestor, NodeId node)
{
    if (!tree.contains(ancestor) || !tree.contains(node)) throw ValidationError("unknown node id");
    for (NodeId p = tree.parent(node); p != kNoNode; p = tree.parent(p))
        if (p == ancestor) return true;
    return false;
}

namespace {

void bracket(const LayoutTree& t, NodeId id, std::string& out)
{
    out += std::to_string(id);
    if (t.kind() == TreeKind::binary) {
        if (t.left(id) == kNoNode && t.right(id) == kNoNode) return;
        out += '(';
        if (t.left(id) != kNoNode) bracket(t, t.left(id), out);
        out += ',';
        if (t.right(id) != kNoNode) bracket(t, t.right(id), out);
        out += ')';
    } else {
        const auto kids = t.children(id);
        if (kids.empty()) return;
        out += '[';
        for (std::size_t i = 0; i < kids.size(); ++i) {
            if (i) out += ' ';
            bracket(t, kids[i], out);
        }
        out += ']';
    }
}

}  // namespace

std::string to_bracket_string(const LayoutTree& tree)
{
    std::string out;
    if (tree.root() != kNoNode) bracket(tree, tree.root(), out);
    return out;
}

}  // namespace genfloor
