#pragma once

#include <vector>

#include "genfloor/model.hpp"
#include "genfloor/placement.hpp"

namespace genfloor::fixtures {

/// Eight-room dwelling. Goals: 14 pairs at L1, 10 at L2, 8 at L3 (counted as
/// matrix entries: 28, 20, 16). The corridor has four goal partners.
Problem residential8();
/// Tiling of the 12x18 plot that meets every L1 goal.
Floorplan residential8_designed();

/// Four rooms small enough to enumerate every Available Nodes genome; the
/// best layout meets 10 of the 12 goal entries.
Problem small4();

/// a = 4x3, b = 2x2, c = 3x1.
std::vector<SpatialRequirement> abc_requirements();
/// a(0,0), b(4,0), c(0,3): the standard-tree B*-tree placement of abc.
Floorplan abc_layout();

}  // namespace genfloor::fixtures
