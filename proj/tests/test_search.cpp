#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "genfloor/fixtures.hpp"
#include "genfloor/search.hpp"
#include "genfloor/tree.hpp"
#include "oracle/step_interpreter.hpp"
#include "support.hpp"

using namespace genfloor;

namespace {

bool dominates_plain(const std::vector<double>& a, const std::vector<double>& b)
{
    bool better = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) return false;
        if (a[k] < b[k]) better = true;
    }
    return better;
}

// Peel non-dominated layers one at a time.
std::vector<int> brute_ranks(const std::vector<std::vector<double>>& pts, const std::vector<int>& viol)
{
    auto dom = [&](std::size_t i, std::size_t j) {
        if (viol[i] != viol[j]) return viol[i] < viol[j];
        return dominates_plain(pts[i], pts[j]);
    };
    std::vector<int> rank(pts.size(), -1);
    std::size_t left = pts.size();
    for (int r = 0; left > 0; ++r) {
        std::vector<std::size_t> layer;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (rank[i] >= 0) continue;
            bool beaten = false;
            for (std::size_t j = 0; j < pts.size() && !beaten; ++j)
                if (rank[j] < 0 && j != i && dom(j, i)) beaten = true;
            if (!beaten) layer.push_back(i);
        }
        for (auto i : layer) rank[i] = r;
        left -= layer.size();
    }
    return rank;
}

// Minimal O-tree: parse "0[1[2] 3]", place naively, count shared edges.
struct NaryText {
    std::map<int, std::vector<int>> kids;
    int root = 0;
};

NaryText parse_nary(const std::string& s)
{
    NaryText t;
    std::vector<int> stack;
    int last = -1;
    for (std::size_t i = 0; i < s.size();) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            int v = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
            if (!stack.empty()) t.kids[stack.back()].push_back(v);
            else t.root = v;
            last = v;
            continue;
        }
        if (s[i] == '[') stack.push_back(last);
        if (s[i] == ']') stack.pop_back();
        ++i;
    }
    return t;
}

struct Box {
    double x, y, w, h;
};

std::map<int, Box> naive_otree(const NaryText& t, const std::vector<SpatialRequirement>& reqs)
{
    std::map<int, Box> placed;
    std::vector<Box> order;
    auto visit = [&](auto&& self, int id, double px) -> void {
        for (int c : t.kids.count(id) ? t.kids.at(id) : std::vector<int>{}) {
            const double w = from_micro(reqs[c - 1].width), h = from_micro(reqs[c - 1].height);
            double y = 0;
            for (const auto& b : order)
                if (b.x < px + w && px < b.x + b.w) y = std::max(y, b.y + b.h);
            placed[c] = {px, y, w, h};
            order.push_back(placed[c]);
            self(self, c, px + w);
        }
    };
    visit(visit, t.root, 0);
    return placed;
}

bool touching(const Box& a, const Box& b)
{
    const double ox = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
    const double oy = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
    return (ox > 0 && std::abs(oy) < 1e-9) || (oy > 0 && std::abs(ox) < 1e-9);
}

Problem abc_problem(Method method)
{
    Problem p;
    p.requirements = testing_support::abc();
    p.goals.declare(0, 1, Priority::L1);
    p.goals.declare(1, 2, Priority::L1);
    p.goals.declare(0, 2, Priority::L1);
    p.representation = method;
    return p;
}

}  // namespace

TEST_CASE("nondominated sort examples")
{
    auto fronts = nondominated_sort({{1, 1}, {1, 2}, {2, 2}}, {0, 0, 0});
    REQUIRE(fronts.size() == 3);
    CHECK(fronts[0] == std::vector<std::size_t>{0});
    CHECK(fronts[1] == std::vector<std::size_t>{1});
    CHECK(fronts[2] == std::vector<std::size_t>{2});
    CHECK(nondominated_sort({{3, 3}, {3, 3}, {3, 3}}, {0, 0, 0}).size() == 1);
    CHECK(nondominated_sort({{5, 1}}, {0}).size() == 1);
    // Feasible beats infeasible whatever the objectives say.
    auto c = nondominated_sort({{9, 9}, {0, 0}}, {0, 1});
    REQUIRE(c.size() == 2);
    CHECK(c[0] == std::vector<std::size_t>{0});
    CHECK(constrained_dominates({9, 9}, 0, {0, 0}, 1));
    CHECK(constrained_dominates({0, 0}, 1, {0, 0}, 2));
    CHECK_FALSE(constrained_dominates({1, 2}, 0, {2, 1}, 0));
}

TEST_CASE("nondominated sort agrees with brute force")
{
    std::mt19937 rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 64)(rng);
        const int m = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<std::vector<double>> pts(n, std::vector<double>(m));
        std::vector<int> viol(n);
        for (auto& p : pts)
            for (auto& v : p) v = std::uniform_int_distribution<int>(0, 5)(rng);
        for (auto& v : viol) v = std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? 1 : 0;
        const auto expected = brute_ranks(pts, viol);
        const auto fronts = nondominated_sort(pts, viol);
        std::vector<int> got(n, -1);
        for (std::size_t r = 0; r < fronts.size(); ++r)
            for (auto i : fronts[r]) got[i] = static_cast<int>(r);
        REQUIRE(got == expected);
    }
}

TEST_CASE("crowding distance")
{
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(crowding_distance({{1, 2}, {2, 1}}) == std::vector<double>{inf, inf});
    auto line = crowding_distance({{0, 0}, {1, 1}, {2, 2}});
    CHECK(line[0] == inf);
    CHECK(line[2] == inf);
    CHECK(line[1] == doctest::Approx(2.0));
    // Spans 6 and 10: (1,6) gets 3/6 + 7/10, (3,3) gets 5/6 + 6/10.
    auto four = crowding_distance({{0, 10}, {1, 6}, {3, 3}, {6, 0}});
    CHECK(four[0] == inf);
    CHECK(four[3] == inf);
    CHECK(four[1] == doctest::Approx(0.5 + 0.7));
    CHECK(four[2] == doctest::Approx(5.0 / 6.0 + 0.6));
}

TEST_CASE("config validation")
{
    GAConfig c;
    CHECK_NOTHROW(c.validate());
    c.population = 5;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.population = 2;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.generations = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.mutation_rate = 1.5;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.objectives = {Objective::area, Objective::area};
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.constraints.fit_boundary = true;
    CHECK_THROWS_AS(Evaluator(abc_problem(Method::bstar_available_nodes), c), ValidationError);
    CHECK(parse_objective("distance") == Objective::distance);
    CHECK_THROWS_AS(parse_objective("speed"), ValidationError);
}

TEST_CASE("genome spec ranges")
{
    Problem p = abc_problem(Method::bstar_ascend_descend);
    auto spec = GenomeSpec::for_problem(p);
    CHECK(spec.size() == 6);
    for (const auto& g : spec.genes) CHECK(g.hi == 12);
    p.representation = Method::otree_proceeding;
    p.use_rotation_genes = true;
    spec = GenomeSpec::for_problem(p);
    REQUIRE(spec.size() == 6);
    CHECK(spec.genes[0].hi == 3);
    CHECK(spec.genes[5].hi == 1);
    CHECK(spec.accepts({0, 1, 2, 0, 1, 0}));
    CHECK_FALSE(spec.accepts({0, 1, 4, 0, 1, 0}));
    CHECK_FALSE(spec.accepts({0, 1, 2}));
}

TEST_CASE("identity genome decodes to the standard layout")
{
    const Problem p = abc_problem(Method::bstar_ascend_descend);
    const GAConfig c;
    const auto spec = GenomeSpec::for_problem(p);
    const Solution s = decode_and_evaluate(spec.identity(), p, c);
    CHECK(s.floorplan.tree == build_standard_tree(3, TreeKind::binary));
    const auto expected = testing_support::abc_floorplan();
    REQUIRE(s.floorplan.blocks.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(s.floorplan.blocks[i].x == expected.blocks[i].x);
        CHECK(s.floorplan.blocks[i].y == expected.blocks[i].y);
    }
    // a touches b and c; b and c only meet at a corner.
    CHECK(s.adjacency == 4);
    CHECK(s.objectives == std::vector<double>{-4, 24});
    CHECK(decode_and_evaluate(spec.identity(), p, c).objectives == s.objectives);
}

TEST_CASE("distance objective sums gaps over goal pairs")
{
    const Problem p = abc_problem(Method::bstar_ascend_descend);
    GAConfig c;
    c.objectives = {Objective::distance, Objective::adjacency};
    const Solution s = decode_and_evaluate(GenomeSpec::for_problem(p).identity(), p, c);
    CHECK(s.objectives[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(s.objectives[1] == -4);
}

TEST_CASE("exhaustive proceeding genomes reach the brute-force maximum at n=3")
{
    Problem p = abc_problem(Method::otree_proceeding);
    const GAConfig c;
    const auto entries = p.goals.entries(Priority::L1);

    int engine_best = -1, oracle_best = -1;
    for (int g = 0; g < 64; ++g) {
        const std::vector<int> v{g % 4, g / 4 % 4, g / 16};
        engine_best = std::max(engine_best, decode_and_evaluate(v, p, c).adjacency);

        const auto boxes = naive_otree(parse_nary(oracle::run(oracle::Method::proceeding, 3, v)), p.requirements);
        int count = 0;
        for (const auto& e : entries)
            if (touching(boxes.at(e.a + 1), boxes.at(e.b + 1))) ++count;
        oracle_best = std::max(oracle_best, count);
    }
    CHECK(engine_best == oracle_best);
    CHECK(engine_best == 6);
}

TEST_CASE("smoke run on two spaces")
{
    Problem p;
    p.requirements = {testing_support::req("a", 2, 1), testing_support::req("b", 1, 1)};
    p.goals.declare(0, 1, Priority::L1);
    GAConfig c;
    c.population = 4;
    c.generations = 1;
    const auto r = nsga2_run(p, c);
    REQUIRE(r.population.size() == 4);
    for (const auto& s : r.population) {
        CHECK(s.floorplan.blocks.size() == 2);
        CHECK(s.objectives.size() == 2);
    }
    CHECK(r.history.size() == 2);
    CHECK_FALSE(r.pareto.empty());
}

TEST_CASE("runs are deterministic and independent of worker count")
{
    const Problem p = fixtures::residential8();
    GAConfig c;
    c.population = 20;
    c.generations = 4;
    c.seed = 7;
    const auto a = nsga2_run(p, c);
    const auto b = nsga2_run(p, c);
    c.workers = 3;
    const auto w = nsga2_run(p, c);
    for (const auto* other : {&b, &w}) {
        REQUIRE(other->pareto.size() == a.pareto.size());
        for (std::size_t i = 0; i < a.pareto.size(); ++i) {
            CHECK(other->pareto[i].genome == a.pareto[i].genome);
            CHECK(other->pareto[i].objectives == a.pareto[i].objectives);
        }
        REQUIRE(other->history.size() == a.history.size());
        for (std::size_t i = 0; i < a.history.size(); ++i) {
            CHECK(other->history[i].best_adjacency == a.history[i].best_adjacency);
            CHECK(other->history[i].min_area == a.history[i].min_area);
        }
    }
    c.workers = 1;
    c.seed = 8;
    const auto d = nsga2_run(p, c);
    bool differs = d.pareto.size() != a.pareto.size();
    for (std::size_t i = 0; !differs && i < a.pareto.size(); ++i) differs = d.pareto[i].genome != a.pareto[i].genome;
    CHECK(differs);
}

TEST_CASE("elitism and archive consistency")
{
    const Problem p = fixtures::residential8();
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        GAConfig c;
        c.population = 30;
        c.generations = 6;
        c.seed = seed;
        c.objectives = {Objective::adjacency, Objective::area, Objective::distance};
        const auto r = nsga2_run(p, c);
        REQUIRE(r.history.size() == 7);
        for (std::size_t i = 1; i < r.history.size(); ++i) {
            CHECK(r.history[i].generation == static_cast<int>(i));
            CHECK(r.history[i].best_adjacency >= r.history[i - 1].best_adjacency);
            CHECK(r.history[i].min_area <= r.history[i - 1].min_area);
        }
        for (const auto& s : r.pareto) {
            const auto again = decode_and_evaluate(s.genome, p, c);
            CHECK(again.objectives == s.objectives);
            CHECK(s.rank == 0);
        }
        for (std::size_t i = 0; i < r.pareto.size(); ++i)
            for (std::size_t j = 0; j < r.pareto.size(); ++j)
                CHECK_FALSE(constrained_dominates(r.pareto[i].objectives, r.pareto[i].violation, r.pareto[j].objectives,
                                                  r.pareto[j].violation));
    }
}

TEST_CASE("boundary constraint counts violations")
{
    Problem p = abc_problem(Method::bstar_available_nodes);
    p.boundary = Boundary::rectangle(6, 4);
    GAConfig c;
    c.constraints.fit_boundary = true;
    const auto spec = GenomeSpec::for_problem(p);
    CHECK(decode_and_evaluate(spec.identity(), p, c).violation == 0);
    p.boundary = Boundary::rectangle(5, 4);
    CHECK(decode_and_evaluate(spec.identity(), p, c).violation == 1);
    c.constraints.no_penalty = true;
    CHECK(decode_and_evaluate(spec.identity(), p, c).violation == 1);  // flexible spaces may shrink
    p.requirements[0].flexible = false;
    CHECK(decode_and_evaluate(spec.identity(), p, c).violation == 2);
}

TEST_CASE("progress callback can stop a run")
{
    const Problem p = fixtures::small4();
    GAConfig c;
    c.population = 8;
    c.generations = 10;
    int calls = 0;
    const auto r = nsga2_run(p, c, [&](const GenerationStats&) { return ++calls < 3; });
    CHECK(r.cancelled);
    CHECK(calls == 3);
    CHECK(r.history.size() == 3);
}
