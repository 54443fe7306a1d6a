#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include <unistd.h>

#include "genfloor/fixtures.hpp"
#include "genfloor/io.hpp"
#include "genfloor/perturb.hpp"
#include "genfloor/tree.hpp"
#include "support.hpp"

using namespace genfloor;

namespace {

Problem abc_problem()
{
    Problem p;
    p.requirements = testing_support::abc();
    p.goals.declare(0, 1, Priority::L2);
    p.goals.declare(1, 2, Priority::L1);
    p.representation = Method::bstar_ascend_descend;
    return p;
}

void check_same(const Problem& a, const Problem& b)
{
    CHECK(a.requirements == b.requirements);
    CHECK(a.goals == b.goals);
    CHECK(a.boundary == b.boundary);
    CHECK(a.representation == b.representation);
    CHECK(a.use_rotation_genes == b.use_rotation_genes);
}

struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        path = std::filesystem::temp_directory_path() / ("genfloor-io-" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("problem json round trip")
{
    Problem p = fixtures::residential8();
    check_same(problem_from_json(problem_to_json(p)), p);

    Problem q = abc_problem();
    q.boundary = Boundary{{{0, 0}, {6, 0}, {6, 2}, {3, 2}, {3, 4}, {0, 4}}, false};
    q.use_rotation_genes = true;
    q.requirements[2].flexible = false;
    q.requirements[2].anchor_edge = Edge::north;
    q.requirements[2].facing = Edge::south;
    const Json j = problem_to_json(q);
    CHECK(j["boundary"].contains("polygon"));
    CHECK(j["goals"].size() == 2);
    check_same(problem_from_json(j), q);
    check_same(problem_from_json(parse_json(j.dump())), q);
}

TEST_CASE("problem json rejects bad input")
{
    CHECK_THROWS_AS(parse_json("{nope"), ValidationError);
    CHECK_THROWS_AS(problem_from_json(Json::array()), ValidationError);
    CHECK_THROWS_AS(problem_from_json(Json{{"goals", Json::array()}}), ValidationError);
    Json j = problem_to_json(abc_problem());
    j["requirements"][0]["width"] = -1;
    CHECK_THROWS_AS(problem_from_json(j), ValidationError);
    j = problem_to_json(abc_problem());
    j["goals"][0]["b"] = "zz";
    CHECK_THROWS_AS(problem_from_json(j), ValidationError);
    j = problem_to_json(abc_problem());
    j["representation"] = "slicing";
    CHECK_THROWS_AS(problem_from_json(j), ValidationError);
    j = problem_to_json(abc_problem());
    j["boundary"] = Json{{"polygon", {{0, 0}, {4, 4}, {4, 0}, {0, 4}}}};
    CHECK_THROWS_AS(problem_from_json(j), ValidationError);
}

TEST_CASE("csv problems keep priorities")
{
    const Problem p = fixtures::residential8();
    const std::string csv = write_requirements_csv({p.requirements, p.goals});
    const Problem back = problem_from_csv(csv);
    CHECK(back.requirements == p.requirements);
    CHECK(back.goals == p.goals);
    CHECK(back.goals.count(Priority::L1) == 28);
    CHECK(back.goals.count(Priority::L2) == 20);
    CHECK(back.goals.count(Priority::L3) == 16);
}

TEST_CASE("tree json round trip")
{
    for (auto kind : {TreeKind::binary, TreeKind::nary}) {
        const Method m = kind == TreeKind::binary ? Method::bstar_available_nodes : Method::otree_proceeding;
        const auto t = perturb(build_standard_tree(5, kind), PermutationParams::parse(m, kind == TreeKind::binary ? "3,7.5,0,2,9" : "2,0,1,3,1"));
        CHECK(tree_from_json(tree_to_json(t), kind, 5) == t);
    }
    const Json j = tree_to_json(build_standard_tree(3, TreeKind::nary), testing_support::abc());
    CHECK(j["label"].is_null());
    CHECK(j["children"][0]["id"] == "a");
    // A node listed twice is not a tree.
    Json bad = tree_to_json(build_standard_tree(3, TreeKind::binary));
    bad["right"] = bad["left"];
    CHECK_THROWS_AS(tree_from_json(bad, TreeKind::binary, 3), ValidationError);
    CHECK_THROWS_AS(tree_from_json(tree_to_json(build_standard_tree(3, TreeKind::binary)), TreeKind::binary, 4),
                    ValidationError);
}

TEST_CASE("floorplan json round trip")
{
    const auto fp = testing_support::abc_floorplan();
    const Json j = floorplan_to_json(fp);
    CHECK(j["representation"] == "bstar_ascend_descend");
    CHECK(j["blocks"][1]["x"] == 4.0);
    CHECK(floorplan_from_json(j) == fp);
    CHECK(floorplan_to_json(floorplan_from_json(j)).dump() == j.dump());
}

TEST_CASE("evaluation report on abc")
{
    Problem p = abc_problem();
    p.goals.declare(0, 2, Priority::L1);
    const Json r = evaluation_report(testing_support::abc_floorplan(), p);
    CHECK(r["adjacency"]["count"] == 4);
    CHECK(r["adjacency"]["required"] == 6);
    CHECK(r["adjacency"]["per_goal"].size() == 3);
    CHECK(r["bounding"]["area"] == 24.0);
    CHECK(r["distances"]["a"] == 0.0);
    CHECK(r["distances"]["b"].get<double>() == doctest::Approx(0.0));
    CHECK(r["inside"].is_null());
    // With c as b's only partner the gap is the corner-to-corner sqrt(2).
    Problem q = abc_problem();
    q.goals = GoalSet{};
    q.goals.declare(1, 2, Priority::L1);
    const Json bc = evaluation_report(testing_support::abc_floorplan(), q);
    CHECK(std::abs(bc["distances"]["b"].get<double>() - std::sqrt(2.0)) < 1e-9);
    CHECK(bc["adjacency"]["count"] == 0);
}

TEST_CASE("config json round trip")
{
    GAConfig c;
    c.population = 40;
    c.seed = 123456789012345ULL;
    c.objectives = {Objective::distance, Objective::adjacency};
    c.constraints.fit_boundary = true;
    c.goal_level = Priority::L2;
    c.workers = 2;
    CHECK(config_from_json(config_to_json(c)) == c);
    CHECK(config_from_json(Json(nullptr)) == GAConfig{});
    CHECK(config_from_json(Json{{"population", 10}}).population == 10);
    CHECK_THROWS_AS(config_from_json(Json{{"population", 3}}), ValidationError);
    CHECK_THROWS_AS(config_from_json(Json{{"objectives", {"beauty"}}}), ValidationError);
    CHECK_THROWS_AS(config_from_json(Json{{"population", "many"}}), ValidationError);
}

TEST_CASE("history formats")
{
    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<GenerationStats> h{{0, -1, inf}, {1, 4, 24}, {2, 6, 22.5}};
    CHECK(history_csv(h) == "generation,best_adjacency,min_area\n0,-1,inf\n1,4,24\n2,6,22.5\n");
    const Json j = history_to_json(h);
    CHECK(j[0]["min_area"].is_null());
    CHECK(j[2]["best_adjacency"] == 6);
}

TEST_CASE("run artifacts")
{
    TempDir dir;
    const Problem p = fixtures::small4();
    GAConfig c;
    c.population = 8;
    c.generations = 2;
    const auto r = nsga2_run(p, c);
    write_run_artifacts(dir.path, p, c, r);
    const Json cfg = parse_json(read_text_file(dir.path / "config.json"));
    CHECK(cfg["population"] == 8);
    CHECK(cfg["problem"]["requirements"].size() == 4);
    const std::string csv = read_text_file(dir.path / "history.csv");
    CHECK(csv.rfind("generation,best_adjacency,min_area\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    for (std::size_t i = 0; i < r.pareto.size(); ++i) {
        char name[16];
        std::snprintf(name, sizeof name, "%03zu.json", i);
        const Json s = parse_json(read_text_file(dir.path / "pareto" / name));
        CHECK(s["genome"].get<std::vector<int>>() == r.pareto[i].genome);
        CHECK(floorplan_from_json(s["floorplan"]) == r.pareto[i].floorplan);
    }
    CHECK_THROWS_AS(read_text_file(dir.path / "missing.json"), ValidationError);
}
