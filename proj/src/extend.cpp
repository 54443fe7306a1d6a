#include "genfloor/extend.hpp"

#include <algorithm>

#include "genfloor/eval.hpp"

namespace genfloor {

bool interiors_overlap(const Rect& a, const Rect& b)
{
    return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

double ExtendedLayout::coverage() const
{
    double sum = 0;
    for (const auto& b : blocks) sum += b.rect.area();
    return sum / boundary.area();
}

namespace {

// Maps [lo, hi] onto [0, extent]; both ends exact so shared edges stay equal.
double rescale(Length v, Length lo, Length hi, double extent)
{
    if (v == hi) return extent;
    if (v == lo) return 0.0;
    return extent * static_cast<double>(v - lo) / static_cast<double>(hi - lo);
}

void grow(std::vector<ExtendedBlock>& blocks, std::size_t i, const Rect& boundary)
{
    Rect& r = blocks[i].rect;
    auto others = [&](auto&& fn) {
        for (std::size_t j = 0; j < blocks.size(); ++j)
            if (j != i) fn(blocks[j].rect);
    };
    double limit = boundary.x1;
    others([&](const Rect& o) {
        if (o.y0 < r.y1 && r.y0 < o.y1 && o.x0 >= r.x1) limit = std::min(limit, o.x0);
    });
    r.x1 = limit;

    limit = boundary.y1;
    others([&](const Rect& o) {
        if (o.x0 < r.x1 && r.x0 < o.x1 && o.y0 >= r.y1) limit = std::min(limit, o.y0);
    });
    r.y1 = limit;

    limit = boundary.x0;
    others([&](const Rect& o) {
        if (o.y0 < r.y1 && r.y0 < o.y1 && o.x1 <= r.x0) limit = std::max(limit, o.x1);
    });
    r.x0 = limit;

    limit = boundary.y0;
    others([&](const Rect& o) {
        if (o.x0 < r.x1 && r.x0 < o.x1 && o.y1 <= r.y0) limit = std::max(limit, o.y1);
    });
    r.y0 = limit;
}

}  // namespace

ExtendedLayout extend_layout(const Floorplan& fp, const std::vector<SpatialRequirement>& reqs, double width, double height)
{
    if (!(width > 0) || !(height > 0)) throw ValidationError("extension boundary must have positive width and height");
    const BoundingBox box = bounding_area(fp);

    ExtendedLayout ex;
    ex.boundary = Rect{0, 0, width, height};
    ex.sx = width / from_micro(box.width());
    ex.sy = height / from_micro(box.height());

    const bool has_fixed = std::any_of(fp.blocks.begin(), fp.blocks.end(), [&](const SpatialBlock& b) {
        return b.label < static_cast<int>(reqs.size()) && !reqs[b.label].flexible;
    });
    if (has_fixed && (ex.sx < 1.0 || ex.sy < 1.0)) {
        ex.penalty = true;
        return ex;
    }

    for (const auto& b : fp.blocks) {
        ExtendedBlock e;
        e.label = b.label;
        e.id = b.id;
        e.fixed_w = b.w;
        e.fixed_h = b.h;
        e.scaled = Rect{rescale(b.x, box.x0, box.x1, width), rescale(b.y, box.y0, box.y1, height),
                        rescale(b.x1(), box.x0, box.x1, width), rescale(b.y1(), box.y0, box.y1, height)};
        e.rect = e.scaled;
        ex.blocks.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < ex.blocks.size(); ++i) grow(ex.blocks, i, ex.boundary);
    return ex;
}

AllocatedLayout allocate_fixed_blocks(const ExtendedLayout& ex, const std::vector<SpatialRequirement>& reqs)
{
    if (ex.penalty) throw ValidationError("cannot allocate blocks in a penalized layout");
    AllocatedLayout out;
    out.boundary = ex.boundary;
    for (const auto& e : ex.blocks) {
        AllocatedBlock a;
        a.label = e.label;
        a.id = e.id;
        a.rect = e.rect;
        if (e.label < static_cast<int>(reqs.size()) && !reqs[e.label].flexible) {
            const auto& req = reqs[e.label];
            a.flexible = false;
            a.facing = req.facing;
            const double w = from_micro(e.fixed_w), h = from_micro(e.fixed_h);
            const Rect& area = e.rect;
            double x = area.x0 + (area.width() - w) / 2;
            double y = area.y0 + (area.height() - h) / 2;
            if (req.anchor_edge) {
                switch (*req.anchor_edge) {
                case Edge::north: y = area.y1 - h; break;
                case Edge::south: y = area.y0; break;
                case Edge::east: x = area.x1 - w; break;
                case Edge::west: x = area.x0; break;
                }
            }
            a.rect = Rect{x, y, x + w, y + h};
            a.feasible = w <= area.width() && h <= area.height();
        }
        out.blocks.push_back(std::move(a));
    }
    return out;
}

}  // namespace genfloor
