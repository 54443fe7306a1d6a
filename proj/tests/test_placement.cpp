#include <doctest.h>

#include "genfloor/placement.hpp"
#include "support.hpp"

using namespace genfloor;
using testing_support::abc;

namespace {

Length u(double v) { return to_micro(v); }

void check_at(const Floorplan& fp, int label, double x, double y)
{
    const auto* b = fp.find(label);
    REQUIRE(b != nullptr);
    CHECK(b->x == u(x));
    CHECK(b->y == u(y));
}

}  // namespace

TEST_CASE("contour")
{
    Contour c;
    CHECK(c.max_height(0, u(4)) == 0);
    CHECK(c.place(0, u(4), u(3)) == 0);
    CHECK(c.max_height(u(2), u(4)) == u(3));
    CHECK(c.place(u(4), u(2), u(2)) == 0);
    CHECK(c.max_height(u(3), u(2)) == u(3));
    auto segs = c.segments();
    REQUIRE(segs.size() == 3);
    CHECK(segs[0].x_end == u(4));
    CHECK(segs[1].height == u(2));
    CHECK(segs[2].x_end == Contour::kInfinity);
}

TEST_CASE("b*-tree placement")
{
    auto fp = place_bstar(build_standard_tree(3, TreeKind::binary), abc());
    check_at(fp, 0, 0, 0);
    check_at(fp, 1, 4, 0);
    check_at(fp, 2, 0, 3);

    auto chain = tree_from_links(TreeKind::binary, 1, {kNoNode, kNoNode, 1, 2}, {kNoNode, 2, 3, kNoNode},
                                 {kNoNode, kNoNode, kNoNode, kNoNode}, {});
    auto row = place_bstar(chain, abc());
    check_at(row, 0, 0, 0);
    check_at(row, 1, 4, 0);
    check_at(row, 2, 6, 0);

    auto single = place_bstar(build_standard_tree(1, TreeKind::binary), {testing_support::req("a", 4, 3)});
    check_at(single, 0, 0, 0);
}

TEST_CASE("o-tree placement")
{
    auto stack = place_otree(build_standard_tree(3, TreeKind::nary), abc());
    check_at(stack, 0, 0, 0);
    check_at(stack, 1, 0, 3);
    check_at(stack, 2, 0, 5);

    auto t = build_standard_tree(3, TreeKind::nary);
    t.move_subtree(3, 2);
    t.move_subtree(2, 1);
    auto row = place_otree(t, abc());
    check_at(row, 0, 0, 0);
    check_at(row, 1, 4, 0);
    check_at(row, 2, 6, 0);
}

TEST_CASE("rotation swaps only rotatable requirements")
{
    auto reqs = abc();
    reqs[0].rotatable = true;
    auto fp = place_bstar(build_standard_tree(3, TreeKind::binary), reqs, {true, true, false});
    const auto* a = fp.find(0);
    CHECK(a->w == u(3));
    CHECK(a->h == u(4));
    CHECK(a->rotated);
    const auto* b = fp.find(1);
    CHECK(b->w == u(2));
    CHECK_FALSE(b->rotated);
    check_at(fp, 1, 3, 0);
    check_at(fp, 2, 0, 4);
}
