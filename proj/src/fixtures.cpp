#include "genfloor/fixtures.hpp"

#include "genfloor/tree.hpp"

namespace genfloor::fixtures {

namespace {

SpatialRequirement room(const char* id, const char* name, double w, double h, bool rotatable = true)
{
    SpatialRequirement r;
    r.id = id;
    r.name = name;
    r.width = to_micro(w);
    r.height = to_micro(h);
    r.rotatable = rotatable;
    r.flexible = true;
    return r;
}

SpatialBlock placed(const Problem& p, const char* id, double x, double y)
{
    SpatialBlock b;
    b.label = p.index_of(id);
    b.id = id;
    b.x = to_micro(x);
    b.y = to_micro(y);
    b.w = p.requirements[b.label].width;
    b.h = p.requirements[b.label].height;
    return b;
}

}  // namespace

Problem residential8()
{
    Problem p;
    p.requirements = {
        room("ent", "Entry", 2, 5),    room("study", "Study", 2, 13), room("liv", "Living", 5, 18), room("kit", "Kitchen", 2, 5),
        room("din", "Dining", 2, 5),   room("bath", "Bath", 2, 5),    room("bed", "Bedroom", 2, 3), room("cor", "Corridor", 3, 18),
    };
    auto goal = [&](const char* a, const char* b, Priority level) { p.goals.declare(p.index_of(a), p.index_of(b), level); };
    // L3 is what survives transitive pruning of L2; (kit,din) and (din,bath)
    // close triangles through the living room.
    goal("ent", "liv", Priority::L3);
    goal("study", "liv", Priority::L3);
    goal("liv", "kit", Priority::L3);
    goal("liv", "din", Priority::L3);
    goal("liv", "bath", Priority::L3);
    goal("kit", "cor", Priority::L3);
    goal("din", "cor", Priority::L3);
    goal("bath", "cor", Priority::L3);
    goal("kit", "din", Priority::L2);
    goal("din", "bath", Priority::L2);
    goal("ent", "study", Priority::L1);
    goal("liv", "bed", Priority::L1);
    goal("bath", "bed", Priority::L1);
    goal("bed", "cor", Priority::L1);
    p.boundary = Boundary::rectangle(12, 18);
    p.representation = Method::bstar_available_nodes;
    return p;
}

Floorplan residential8_designed()
{
    const Problem p = residential8();
    Floorplan fp;
    fp.blocks = {
        placed(p, "ent", 0, 0), placed(p, "study", 0, 5), placed(p, "liv", 2, 0), placed(p, "kit", 7, 0),
        placed(p, "din", 7, 5), placed(p, "bath", 7, 10), placed(p, "bed", 7, 15), placed(p, "cor", 9, 0),
    };
    fp.tree = build_standard_tree(p);
    fp.representation = p.representation;
    return fp;
}

Problem small4()
{
    Problem p;
    p.requirements = {room("a", "A", 4, 4, false), room("b", "B", 5, 3, false), room("c", "C", 1, 1, false),
                      room("d", "D", 4, 4, false)};
    // Every pair is a goal; no placement meets all six.
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) p.goals.declare(i, j, Priority::L1);
    p.representation = Method::bstar_available_nodes;
    return p;
}

std::vector<SpatialRequirement> abc_requirements()
{
    return {room("a", "a", 4, 3, false), room("b", "b", 2, 2, false), room("c", "c", 3, 1, false)};
}

Floorplan abc_layout()
{
    Floorplan fp;
    fp.tree = build_standard_tree(3, TreeKind::binary);
    fp.representation = Method::bstar_ascend_descend;
    fp = place(fp.tree, abc_requirements(), {}, fp.representation);
    return fp;
}

}  // namespace genfloor::fixtures
