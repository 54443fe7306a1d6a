#include "genfloor/perturb.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <fmt/core.h>

namespace genfloor {

int PermutationParams::steps() const
{
    return method == Method::bstar_ascend_descend ? static_cast<int>(values.size() / 2) : static_cast<int>(values.size());
}

int param_upper_bound(Method method, int n) { return method == Method::otree_proceeding ? n : 4 * n; }

void PermutationParams::validate(int n) const
{
    const std::size_t expected = method == Method::bstar_ascend_descend ? 2 * static_cast<std::size_t>(n) : n;
    if (values.size() != expected)
        throw ValidationError(std::string(genfloor::to_string(method)) + " expects " + std::to_string(n) +
                              (method == Method::bstar_ascend_descend ? " pairs" : " values") + ", got " +
                              fmt::format("{:g}", method == Method::bstar_ascend_descend ? values.size() / 2.0 : values.size()));
    const int hi = param_upper_bound(method, n);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] > hi)
            throw ValidationError("permutation parameter " + std::to_string(i + 1) + " is outside its domain");
    }
}

namespace {

int parse_value(Method method, std::string_view token)
{
    double v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ValidationError("bad permutation parameter '" + std::string(token) + "'");
    const double scaled = method == Method::otree_proceeding ? v : 2 * v;
    if (scaled != std::floor(scaled))
        throw ValidationError("permutation parameter '" + std::string(token) +
                              (method == Method::otree_proceeding ? "' must be an integer" : "' must be a multiple of 0.5"));
    return static_cast<int>(scaled);
}

std::string format_value(Method method, int v)
{
    if (method == Method::otree_proceeding || v % 2 == 0)
        return std::to_string(method == Method::otree_proceeding ? v : v / 2);
    return std::to_string(v / 2) + ".5";
}

std::string_view strip(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

PermutationParams PermutationParams::parse(Method method, std::string_view text)
{
    PermutationParams p;
    p.method = method;
    text = strip(text);
    if (text.empty()) return p;
    std::size_t pos = 0;
    while (true) {
        auto comma = text.find(',', pos);
        auto item = strip(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (method == Method::bstar_ascend_descend) {
            auto colon = item.find(':');
            if (colon == std::string_view::npos)
                throw ValidationError("ascend/descend parameters are up:down pairs, got '" + std::string(item) + "'");
            p.values.push_back(parse_value(method, strip(item.substr(0, colon))));
            p.values.push_back(parse_value(method, strip(item.substr(colon + 1))));
        } else {
            p.values.push_back(parse_value(method, item));
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return p;
}

std::string PermutationParams::to_string() const
{
    std::ostringstream os;
    if (method == Method::bstar_ascend_descend) {
        for (std::size_t i = 0; i + 1 < values.size(); i += 2)
            os << (i ? "," : "") << format_value(method, values[i]) << ':' << format_value(method, values[i + 1]);
    } else {
        for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << format_value(method, values[i]);
    }
    return os.str();
}

PermutationParams identity_params(Method method, int n)
{
    PermutationParams p;
    p.method = method;
    for (int i = 1; i <= n; ++i) {
        switch (method) {
        case Method::otree_proceeding: p.values.push_back(i); break;
        case Method::bstar_ascend_descend:
            p.values.push_back(1);
            p.values.push_back(1);
            break;
        case Method::bstar_available_nodes:
            // The standard tree's BFS order is D1..Dn, and an unchanged tree
            // keeps it, so D_i's swap target sits at index 4(i-1).
            p.values.push_back(4 * (i - 1));
            break;
        }
    }
    return p;
}

std::string_view to_string(TargetKind kind)
{
    switch (kind) {
    case TargetKind::swap: return "swap";
    case TargetKind::insert_above: return "insert_above";
    case TargetKind::left: return "left";
    case TargetKind::right: return "right";
    }
    return "?";
}

// ---------------------------------------------------------------------------

LayoutTree perturb_proceeding(const LayoutTree& standard, const PermutationParams& params)
{
    if (standard.kind() != TreeKind::nary) throw ValidationError("proceeding perturbation needs an n-ary tree");
    if (params.method != Method::otree_proceeding) throw ValidationError("parameters are not for the proceeding method");
    const int n = standard.size();
    params.validate(n);
    LayoutTree tree = standard;
    for (int i = 1; i <= n; ++i) {
        const NodeId target = params.values[i - 1];
        if (target == i) continue;
        if (is_descendant(tree, i, target)) continue;
        tree.move_subtree(i, target);
    }
    return tree;
}

std::optional<AscendPosition> ascend_target(const LayoutTree& tree, NodeId node, int up2)
{
    if (!tree.contains(node)) throw ValidationError("unknown node id");
    if (up2 == 1) return std::nullopt;
    NodeId reached = node;
    for (int k = 0; k < up2 / 2 && tree.parent(reached) != kNoNode; ++k) reached = tree.parent(reached);
    const bool half = up2 % 2 == 1 && reached != tree.root();
    return AscendPosition{reached, half};
}

TargetDescriptor descend_target(const LayoutTree& tree, AscendPosition from, int down2)
{
    const auto order = bfs_order(tree);
    const auto it = std::find(order.begin(), order.end(), from.node);
    if (it == order.end()) throw ValidationError("ascend position is not a tree member");
    const int last = static_cast<int>(order.size()) - 1;
    const int total2 = 2 * static_cast<int>(it - order.begin()) - (from.half ? 1 : 0) + down2;
    if (total2 % 2 == 0) return {TargetKind::swap, order[std::min(total2 / 2, last)]};
    return {TargetKind::insert_above, order[std::min((total2 + 1) / 2, last)]};
}

void apply_relocation(LayoutTree& tree, NodeId active, TargetDescriptor target)
{
    if (tree.kind() != TreeKind::binary) throw ValidationError("relocation needs a binary tree");
    if (!tree.contains(active)) throw ValidationError("unknown active node");
    if (!tree.contains(target.anchor)) throw ValidationError("relocation target anchors an unknown node");

    if (target.kind == TargetKind::swap) {
        tree.swap_positions(active, target.anchor);
        return;
    }
    if (target.kind == TargetKind::insert_above && target.anchor == active) return;
    if (tree.size() == 1) return;

    // The target's parent disappears with the deletion: back up in BFS order.
    const bool above = target.kind == TargetKind::insert_above;
    const bool parent_lost = above ? tree.parent(target.anchor) == active : target.anchor == active;
    if (parent_lost) {
        const auto order = bfs_order(tree);
        auto idx = std::find(order.begin(), order.end(), target.anchor) - order.begin();
        NodeId replacement = kNoNode;
        for (auto j = idx - 1; j >= 0; --j) {
            NodeId y = order[j];
            if (y != active && (!above || tree.parent(y) != active)) {
                replacement = y;
                break;
            }
        }
        target.anchor = replacement;
    }

    while (true) {
        if (tree.left(active) != kNoNode) {
            tree.swap_positions(active, tree.left(active));
        } else if (tree.right(active) != kNoNode) {
            tree.swap_positions(active, tree.right(active));
        } else {
            break;
        }
    }
    tree.detach_leaf(active);

    if (target.anchor == kNoNode) target.anchor = tree.root();
    switch (target.kind) {
    case TargetKind::insert_above: tree.insert_above(active, target.anchor); break;
    case TargetKind::left: tree.attach(active, target.anchor, Side::left); break;
    case TargetKind::right: tree.attach(active, target.anchor, Side::right); break;
    case TargetKind::swap: break;
    }
}

LayoutTree perturb_ascend_descend(const LayoutTree& standard, const PermutationParams& params)
{
    if (standard.kind() != TreeKind::binary) throw ValidationError("ascend/descend perturbation needs a binary tree");
    if (params.method != Method::bstar_ascend_descend) throw ValidationError("parameters are not for the ascend/descend method");
    const int n = standard.size();
    params.validate(n);
    LayoutTree tree = standard;
    for (NodeId i = 1; i <= n; ++i) {
        const auto position = ascend_target(tree, i, params.values[2 * (i - 1)]);
        if (!position) continue;
        apply_relocation(tree, i, descend_target(tree, *position, params.values[2 * (i - 1) + 1]));
    }
    return tree;
}

std::vector<TargetDescriptor> available_targets(const LayoutTree& tree)
{
    if (tree.kind() != TreeKind::binary) throw ValidationError("available targets are defined for binary trees");
    std::vector<TargetDescriptor> out;
    out.reserve(4 * static_cast<std::size_t>(tree.size()));
    for (NodeId id : bfs_order(tree)) {
        out.push_back({TargetKind::swap, id});
        out.push_back({TargetKind::insert_above, id});
        out.push_back({TargetKind::left, id});
        out.push_back({TargetKind::right, id});
    }
    return out;
}

LayoutTree perturb_available_nodes(const LayoutTree& standard, const PermutationParams& params)
{
    if (standard.kind() != TreeKind::binary) throw ValidationError("available-nodes perturbation needs a binary tree");
    if (params.method != Method::bstar_available_nodes) throw ValidationError("parameters are not for the available-nodes method");
    const int n = standard.size();
    params.validate(n);
    LayoutTree tree = standard;
    for (NodeId i = 1; i <= n; ++i) {
        const auto targets = available_targets(tree);
        const int index = std::min(params.values[i - 1], static_cast<int>(targets.size()) - 1);
        apply_relocation(tree, i, targets[index]);
    }
    return tree;
}

LayoutTree perturb(const LayoutTree& standard, const PermutationParams& params)
{
    switch (params.method) {
    case Method::otree_proceeding: return perturb_proceeding(standard, params);
    case Method::bstar_ascend_descend: return perturb_ascend_descend(standard, params);
    case Method::bstar_available_nodes: return perturb_available_nodes(standard, params);
    }
    throw ValidationError("unknown method");
}

}  // namespace genfloor
