#include "genfloor/render.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "genfloor/eval.hpp"

namespace genfloor {

std::string_view to_string(RenderKind k)
{
    switch (k) {
    case RenderKind::floorplan: return "floorplan";
    case RenderKind::bubble: return "bubble";
    case RenderKind::tree: return "tree";
    }
    return "?";
}

RenderKind parse_render_kind(std::string_view s)
{
    if (s == "floorplan") return RenderKind::floorplan;
    if (s == "bubble") return RenderKind::bubble;
    if (s == "tree") return RenderKind::tree;
    throw ValidationError("unknown render kind '" + std::string(s) + "' (floorplan, bubble, tree)");
}

void RenderSpec::validate() const
{
    if (size <= 0) throw ValidationError("render size must be positive");
}

namespace {

constexpr double kMargin = 20.0;

std::string escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string num(double v)
{
    if (v == 0) v = 0;  // no "-0.00"
    return fmt::format("{:.2f}", v);
}

// Maps floorplan units to pixels, y pointing up.
struct Frame {
    double x0, y1, scale;
    double px(double x) const { return kMargin + (x - x0) * scale; }
    double py(double y) const { return kMargin + (y1 - y) * scale; }
};

Frame frame_for(const Floorplan& fp, int size, double& width, double& height)
{
    const BoundingBox box = bounding_area(fp);
    const double bw = from_micro(box.width()), bh = from_micro(box.height());
    const double scale = size / std::max(bw, bh);
    width = bw * scale + 2 * kMargin;
    height = bh * scale + 2 * kMargin;
    return Frame{from_micro(box.x0), from_micro(box.y1), scale};
}

std::string header(double w, double h)
{
    return fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
                       num(w), num(h));
}

std::string label_of(const SpatialBlock& b) { return b.id.empty() ? fmt::format("D{}", b.label + 1) : b.id; }

}  // namespace

std::string render_floorplan_svg(const Floorplan& fp, const RenderSpec& spec)
{
    spec.validate();
    double w, h;
    const Frame f = frame_for(fp, spec.size, w, h);
    std::string out = header(w, h);
    for (const auto& b : fp.blocks) {
        const double x = f.px(from_micro(b.x)), y = f.py(from_micro(b.y1()));
        const double bw = from_micro(b.w) * f.scale, bh = from_micro(b.h) * f.scale;
        out += fmt::format("  <rect class=\"block\" data-id=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"{}\"/>\n",
                           escape(label_of(b)), num(x), num(y), num(bw), num(bh), spec.fill, spec.stroke);
        out += fmt::format("  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"middle\" font-size=\"12\">{}</text>\n",
                           num(x + bw / 2), num(y + bh / 2), escape(label_of(b)));
    }
    out += "</svg>\n";
    return out;
}

std::string render_bubble_svg(const Floorplan& fp, const std::vector<AdjacencyGoal>& goal_entries, const RenderSpec& spec)
{
    spec.validate();
    double w, h;
    const Frame f = frame_for(fp, spec.size, w, h);
    const auto report = adjacency_check(resulted_adjacency(fp), goal_entries);

    std::map<int, std::pair<double, double>> centre;
    for (const auto& b : fp.blocks)
        centre[b.label] = {f.px(from_micro(b.x) + from_micro(b.w) / 2), f.py(from_micro(b.y) + from_micro(b.h) / 2)};

    std::string out = header(w, h);
    for (const auto& c : report.per_goal) {
        auto a = centre.find(c.goal.a), b = centre.find(c.goal.b);
        if (a == centre.end() || b == centre.end()) throw ValidationError("goal references a space missing from the layout");
        const double mx = (a->second.first + b->second.first) / 2, my = (a->second.second + b->second.second) / 2;
        out += fmt::format("  <line class=\"goal {}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"3\"/>\n",
                           c.achieved ? "achieved" : "missed", num(a->second.first), num(a->second.second), num(mx), num(my),
                           c.achieved ? spec.achieved : spec.missed);
    }
    for (const auto& b : fp.blocks) {
        const auto [cx, cy] = centre[b.label];
        out += fmt::format("  <circle class=\"space\" data-id=\"{}\" cx=\"{}\" cy=\"{}\" r=\"16\" fill=\"{}\" stroke=\"{}\"/>\n",
                           escape(label_of(b)), num(cx), num(cy), spec.fill, spec.stroke);
        out += fmt::format("  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"middle\" font-size=\"11\">{}</text>\n",
                           num(cx), num(cy), escape(label_of(b)));
    }
    out += "</svg>\n";
    return out;
}

std::string render_tree_svg(const LayoutTree& tree, const RenderSpec& spec, const std::vector<SpatialRequirement>& reqs)
{
    spec.validate();
    if (tree.root() == kNoNode) throw ValidationError("cannot render an empty tree");

    // Column per node: in-order for binary trees so left and right slots
    // separate; leaves left to right with parents centred for n-ary trees.
    std::map<NodeId, double> column;
    double next = 0;
    auto place = [&](auto&& self, NodeId id) -> void {
        if (tree.kind() == TreeKind::binary) {
            if (tree.left(id) != kNoNode) self(self, tree.left(id));
            column[id] = next++;
            if (tree.right(id) != kNoNode) self(self, tree.right(id));
            return;
        }
        const auto kids = tree.children(id);
        if (kids.empty()) {
            column[id] = next++;
            return;
        }
        for (NodeId c : kids) self(self, c);
        column[id] = (column[kids.front()] + column[kids.back()]) / 2;
    };
    place(place, tree.root());

    int depth = 0;
    for (const auto& [id, col] : column) depth = std::max(depth, tree.depth(id));
    const double step = 56;
    const double width = std::max(next - 1, 0.0) * step + 2 * kMargin + 40;
    const double height = depth * step + 2 * kMargin + 40;
    auto px = [&](NodeId id) { return kMargin + 20 + column[id] * step; };
    auto py = [&](NodeId id) { return kMargin + 20 + tree.depth(id) * step; };

    std::string out = header(width, height);
    for (NodeId id : bfs_order(tree)) {
        for (NodeId c : tree.children(id)) {
            const char* side = tree.kind() == TreeKind::binary ? (tree.left(id) == c ? " left" : " right") : "";
            out += fmt::format("  <line class=\"edge{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\"/>\n", side,
                               num(px(id)), num(py(id)), num(px(c)), num(py(c)), spec.stroke);
        }
    }
    for (NodeId id : bfs_order(tree)) {
        std::string name = fmt::format("D{}", id);
        const int idx = LayoutTree::requirement_index(id);
        const bool synthetic = tree.kind() == TreeKind::nary && id == tree.root();
        if (!synthetic && idx < static_cast<int>(reqs.size())) name = reqs[idx].id;
        out += fmt::format("  <circle class=\"node\" data-node=\"D{}\" cx=\"{}\" cy=\"{}\" r=\"18\" fill=\"{}\" stroke=\"{}\"/>\n",
                           id, num(px(id)), num(py(id)), spec.fill, spec.stroke);
        out += fmt::format("  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"middle\" font-size=\"11\">{}</text>\n",
                           num(px(id)), num(py(id)), escape(name));
    }
    out += "</svg>\n";
    return out;
}

std::string render_svg(const Floorplan& fp, const std::vector<AdjacencyGoal>& goal_entries, const RenderSpec& spec,
                       const std::vector<SpatialRequirement>& reqs)
{
    switch (spec.kind) {
    case RenderKind::floorplan: return render_floorplan_svg(fp, spec);
    case RenderKind::bubble: return render_bubble_svg(fp, goal_entries, spec);
    case RenderKind::tree: return render_tree_svg(fp.tree, spec, reqs);
    }
    return {};
}

}  // namespace genfloor
