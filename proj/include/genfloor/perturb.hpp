#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genfloor/model.hpp"
#include "genfloor/tree.hpp"

namespace genfloor {

/// Deterministic perturbation parameters.
///
/// Proceeding: n integers p_i in [0, n], p_i naming the new parent D_{p_i}.
/// Ascend/Descend: n pairs (up, down) stored interleaved as 2n values.
/// Available Nodes: n values.
/// Half-step methods store every value doubled (0.5 -> 1), so all values
/// are integers in [0, 4n].
struct PermutationParams {
    Method method = Method::bstar_available_nodes;
    std::vector<int> values;

    /// Number of steps (n).
    int steps() const;
    /// Throws ValidationError unless the values fit the method's domain for n.
    void validate(int n) const;

    /// Comma-separated decimals; Ascend/Descend pairs joined by ':'
    /// (e.g. "0.5:0.5,1:0,0.5:0.5").
    static PermutationParams parse(Method method, std::string_view text);
    std::string to_string() const;

    bool operator==(const PermutationParams&) const = default;
};

/// Parameters that reproduce the Standard Tree: p_i = i, all (0.5, 0.5), and
/// the self-swap index of every node.
PermutationParams identity_params(Method method, int n);

/// Inclusive upper bound of one stored value (doubled for half-step methods).
int param_upper_bound(Method method, int n);

LayoutTree perturb_proceeding(const LayoutTree& standard, const PermutationParams& params);

/// Result of the ascend walk: the reached node, and whether the position is
/// the half step between that node and its parent.
struct AscendPosition {
    NodeId node = kNoNode;
    bool half = false;
    bool operator==(const AscendPosition&) const = default;
};

enum class TargetKind { swap, insert_above, left, right };

struct TargetDescriptor {
    TargetKind kind = TargetKind::swap;
    NodeId anchor = kNoNode;
    bool operator==(const TargetDescriptor&) const = default;
};

std::string_view to_string(TargetKind kind);

/// `up2` is the doubled up-step count. Returns nullopt for the half-step-none
/// case (up = 0.5), which leaves the tree unchanged. Climbs are clamped at
/// the root, and a half step reaching the root collapses onto the root.
std::optional<AscendPosition> ascend_target(const LayoutTree& tree, NodeId node, int up2);

/// Walks `down2 / 2` members forward in BFS order from the position. Both
/// half steps count on one scale: an odd total lands between the next
/// member (the ceiling) and its parent. Walks are clamped at the last member.
TargetDescriptor descend_target(const LayoutTree& tree, AscendPosition from, int down2);

/// Moves `active` to `target`.
///
/// A swap exchanges the two labels. Every other target first deletes the
/// active node (switching it with its left child while one exists, else with
/// its right child, until it is a leaf) and then links it at the target.
/// When the target's parent was the deleted node itself, the anchor backs up
/// one BFS member at a time until its parent is still a member.
/// Swapping with itself and inserting directly above itself are no-ops.
void apply_relocation(LayoutTree& tree, NodeId active, TargetDescriptor target);

LayoutTree perturb_ascend_descend(const LayoutTree& standard, const PermutationParams& params);

/// The 4n relocation targets of a binary tree: for each node in BFS order
/// [swap, insert_above, left, right].
std::vector<TargetDescriptor> available_targets(const LayoutTree& tree);

LayoutTree perturb_available_nodes(const LayoutTree& standard, const PermutationParams& params);

/// Dispatches on params.method.
LayoutTree perturb(const LayoutTree& standard, const PermutationParams& params);

}  // namespace genfloor
