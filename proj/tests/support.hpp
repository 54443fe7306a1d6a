#pragma once

#include <string>
#include <vector>

#include "genfloor/model.hpp"
#include "genfloor/placement.hpp"

namespace testing_support {

inline genfloor::SpatialRequirement req(std::string id, double w, double h, bool rotatable = false, bool flexible = true)
{
    genfloor::SpatialRequirement r;
    r.id = id;
    r.name = id;
    r.width = genfloor::to_micro(w);
    r.height = genfloor::to_micro(h);
    r.rotatable = rotatable;
    r.flexible = flexible;
    return r;
}

// a = 4x3, b = 2x2, c = 3x1
inline std::vector<genfloor::SpatialRequirement> abc()
{
    return {req("a", 4, 3), req("b", 2, 2), req("c", 3, 1)};
}

inline genfloor::SpatialBlock block(int label, double x, double y, double w, double h)
{
    using genfloor::to_micro;
    genfloor::SpatialBlock b;
    b.label = label;
    b.id = std::string(1, static_cast<char>('a' + label));
    b.x = to_micro(x);
    b.y = to_micro(y);
    b.w = to_micro(w);
    b.h = to_micro(h);
    return b;
}

// a(0,0,4,3), b(4,0,2,2), c(0,3,3,1)
inline genfloor::Floorplan abc_floorplan()
{
    genfloor::Floorplan fp;
    fp.blocks = {block(0, 0, 0, 4, 3), block(1, 4, 0, 2, 2), block(2, 0, 3, 3, 1)};
    fp.tree = genfloor::build_standard_tree(3, genfloor::TreeKind::binary);
    fp.representation = genfloor::Method::bstar_ascend_descend;
    return fp;
}

}  // namespace testing_support
