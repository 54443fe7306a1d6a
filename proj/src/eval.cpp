#include "genfloor/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace genfloor {

bool blocks_adjacent(const SpatialBlock& a, const SpatialBlock& b, Length min_shared)
{
    if (a.x1() == b.x || b.x1() == a.x) {
        Length shared = std::min(a.y1(), b.y1()) - std::max(a.y, b.y);
        if (shared > min_shared && shared > 0) return true;
    }
    if (a.y1() == b.y || b.y1() == a.y) {
        Length shared = std::min(a.x1(), b.x1()) - std::max(a.x, b.x);
        if (shared > min_shared && shared > 0) return true;
    }
    return false;
}

std::set<LabelPair> resulted_adjacency(const Floorplan& fp, Length min_shared)
{
    std::set<LabelPair> out;
    for (std::size_t i = 0; i < fp.blocks.size(); ++i) {
        for (std::size_t j = i + 1; j < fp.blocks.size(); ++j) {
            const auto& a = fp.blocks[i];
            const auto& b = fp.blocks[j];
            if (blocks_adjacent(a, b, min_shared)) out.insert({std::min(a.label, b.label), std::max(a.label, b.label)});
        }
    }
    return out;
}

AdjacencyReport adjacency_check(const std::set<LabelPair>& resulted, const std::vector<AdjacencyGoal>& goals)
{
    AdjacencyReport report;
    report.resulted = resulted;
    for (const auto& g : goals) {
        bool hit = resulted.count({std::min(g.a, g.b), std::max(g.a, g.b)}) > 0;
        report.per_goal.push_back({g, hit});
        report.achieved_count += hit ? 1 : 0;
    }
    return report;
}

BoundingBox bounding_area(const Floorplan& fp)
{
    if (fp.blocks.empty()) throw ValidationError("bounding area of an empty floorplan");
    BoundingBox box{std::numeric_limits<Length>::max(), std::numeric_limits<Length>::max(),
                    std::numeric_limits<Length>::min(), std::numeric_limits<Length>::min()};
    for (const auto& b : fp.blocks) {
        box.x0 = std::min(box.x0, b.x);
        box.y0 = std::min(box.y0, b.y);
        box.x1 = std::max(box.x1, b.x1());
        box.y1 = std::max(box.y1, b.y1());
    }
    return box;
}

double rect_distance(const SpatialBlock& a, const SpatialBlock& b)
{
    const Length dx = std::max<Length>({0, a.x - b.x1(), b.x - a.x1()});
    const Length dy = std::max<Length>({0, a.y - b.y1(), b.y - a.y1()});
    return std::hypot(from_micro(dx), from_micro(dy));
}

double closest_distance(const SpatialBlock& block, const std::vector<SpatialBlock>& others)
{
    if (others.empty()) throw ValidationError("closest distance needs at least one other block");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : others) best = std::min(best, rect_distance(block, o));
    return best;
}

namespace {

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool on_edge(Point p, Point a, Point b)
{
    return cross(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool inside_or_on(Point p, const std::vector<Point>& poly)
{
    bool inside = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        if (on_edge(p, poly[j], poly[i])) return true;
        if ((poly[i].y > p.y) != (poly[j].y > p.y)) {
            double x = poly[j].x + (p.y - poly[j].y) * (poly[i].x - poly[j].x) / (poly[i].y - poly[j].y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

// Liang-Barsky clip of segment ab to the closed box; true when the clipped
// piece has a point strictly inside the box.
bool crosses_interior(Point a, Point b, double x0, double y0, double x1, double y1)
{
    double t0 = 0, t1 = 1;
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {a.x - x0, x1 - a.x, a.y - y0, y1 - a.y};
    for (int k = 0; k < 4; ++k) {
        if (p[k] == 0) {
            if (q[k] < 0) return false;
            continue;
        }
        double t = q[k] / p[k];
        if (p[k] < 0) t0 = std::max(t0, t);
        else t1 = std::min(t1, t);
        if (t0 > t1) return false;
    }
    const double tm = (t0 + t1) / 2;
    const double mx = a.x + tm * dx, my = a.y + tm * dy;
    return x0 < mx && mx < x1 && y0 < my && my < y1;
}

}  // namespace

ContainmentReport within_boundary(const Floorplan& fp, const std::vector<Point>& polygon)
{
    if (!polygon_is_simple(polygon)) throw ValidationError("boundary polygon is degenerate or self-intersecting");
    ContainmentReport report;
    for (const auto& b : fp.blocks) {
        const double x0 = from_micro(b.x), y0 = from_micro(b.y), x1 = from_micro(b.x1()), y1 = from_micro(b.y1());
        bool ok = true;
        for (Point c : {Point{x0, y0}, Point{x1, y0}, Point{x1, y1}, Point{x0, y1}}) ok = ok && inside_or_on(c, polygon);
        for (std::size_t i = 0; ok && i < polygon.size(); ++i)
            if (crosses_interior(polygon[i], polygon[(i + 1) % polygon.size()], x0, y0, x1, y1)) ok = false;
        report.per_block.push_back(ok);
        report.all_inside = report.all_inside && ok;
    }
    return report;
}

}  // namespace genfloor
