#include <doctest.h>

#include <cmath>

#include "genfloor/eval.hpp"
#include "support.hpp"

using namespace genfloor;
using testing_support::abc_floorplan;
using testing_support::block;

TEST_CASE("resulted adjacency on the abc layout")
{
    auto fp = abc_floorplan();
    auto pairs = resulted_adjacency(fp);
    CHECK(pairs == std::set<LabelPair>{{0, 1}, {0, 2}});
    CHECK(resulted_adjacency(fp, to_micro(2)) == std::set<LabelPair>{{0, 2}});
    CHECK(resulted_adjacency(fp, to_micro(3)).empty());
}

TEST_CASE("corner contact is not adjacency")
{
    CHECK_FALSE(blocks_adjacent(block(0, 0, 0, 1, 1), block(1, 1, 1, 1, 1)));
    CHECK(blocks_adjacent(block(0, 0, 0, 1, 1), block(1, 1, 0.5, 1, 1)));
}

TEST_CASE("adjacency check counts entries")
{
    std::set<LabelPair> resulted{{0, 1}, {0, 2}};
    std::vector<AdjacencyGoal> goals{{0, 1}, {1, 0}, {1, 2}, {2, 1}};
    auto r = adjacency_check(resulted, goals);
    CHECK(r.achieved_count == 2);
    REQUIRE(r.per_goal.size() == 4);
    CHECK(r.per_goal[0].achieved);
    CHECK_FALSE(r.per_goal[2].achieved);
    CHECK(adjacency_check(resulted, {}).achieved_count == 0);
}

TEST_CASE("bounding area")
{
    auto fp = abc_floorplan();
    auto box = bounding_area(fp);
    CHECK(box.width() == to_micro(6));
    CHECK(box.height() == to_micro(4));
    CHECK(box.area() == 24.0);
    for (auto& b : fp.blocks) {
        b.x += to_micro(7.5);
        b.y += to_micro(2);
    }
    CHECK(bounding_area(fp).area() == 24.0);
    CHECK_THROWS_AS(bounding_area(Floorplan{}), ValidationError);
}

TEST_CASE("closest distance")
{
    auto fp = abc_floorplan();
    CHECK(closest_distance(fp.blocks[1], {fp.blocks[2]}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(closest_distance(fp.blocks[0], {fp.blocks[1]}) == 0.0);
    CHECK(closest_distance(block(0, 0, 0, 4, 4), {block(1, 1, 1, 1, 1)}) == 0.0);
    CHECK(closest_distance(fp.blocks[1], {fp.blocks[2], fp.blocks[0]}) == 0.0);
    CHECK_THROWS_AS(closest_distance(fp.blocks[0], {}), ValidationError);
}

TEST_CASE("boundary containment")
{
    auto fp = abc_floorplan();
    std::vector<Point> big{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    auto all = within_boundary(fp, big);
    CHECK(all.all_inside);

    std::vector<Point> tight{{0, 0}, {5, 0}, {5, 10}, {0, 10}};
    auto straddle = within_boundary(fp, tight);
    CHECK_FALSE(straddle.all_inside);
    CHECK(straddle.per_block == std::vector<bool>{true, false, true});

    // L shape: notch [3,6]x[3,6] cut from a 6x6 square
    std::vector<Point> ell{{0, 0}, {6, 0}, {6, 3}, {3, 3}, {3, 6}, {0, 6}};
    Floorplan notch;
    notch.blocks = {block(0, 0, 0, 2, 2), block(1, 3.5, 3.5, 1, 1), block(2, 2, 2, 2, 2)};
    auto r = within_boundary(notch, ell);
    CHECK(r.per_block == std::vector<bool>{true, false, false});

    CHECK_THROWS_AS(within_boundary(fp, {{0, 0}, {1, 1}, {2, 2}}), ValidationError);
}
