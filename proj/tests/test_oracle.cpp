#include <doctest.h>

#include <random>

#include "genfloor/perturb.hpp"
#include "oracle/step_interpreter.hpp"

using namespace genfloor;

namespace {

struct Pairing {
    Method engine;
    oracle::Method oracle;
};

const Pairing kMethods[] = {
    {Method::otree_proceeding, oracle::Method::proceeding},
    {Method::bstar_ascend_descend, oracle::Method::ascend_descend},
    {Method::bstar_available_nodes, oracle::Method::available_nodes},
};

int gene_count(Method m, int n) { return m == Method::bstar_ascend_descend ? 2 * n : n; }

}  // namespace

TEST_CASE("oracle standard trees match")
{
    for (const auto& p : kMethods)
        for (int n = 1; n <= 8; ++n)
            CHECK(oracle::standard(p.oracle, n) == to_bracket_string(build_standard_tree(n, tree_kind_for(p.engine))));
}

TEST_CASE("engine agrees with the oracle on every n<=2 vector")
{
    for (const auto& p : kMethods) {
        for (int n = 1; n <= 2; ++n) {
            const auto standard = build_standard_tree(n, tree_kind_for(p.engine));
            const int hi = param_upper_bound(p.engine, n);
            std::vector<int> v(gene_count(p.engine, n), 0);
            for (;;) {
                CHECK(to_bracket_string(perturb(standard, {p.engine, v})) == oracle::run(p.oracle, n, v));
                std::size_t k = 0;
                while (k < v.size() && v[k] == hi) v[k++] = 0;
                if (k == v.size()) break;
                ++v[k];
            }
        }
    }
}

TEST_CASE("engine agrees with the oracle on random n=6 vectors")
{
    std::mt19937_64 rng(7);
    for (const auto& p : kMethods) {
        const auto standard = build_standard_tree(6, tree_kind_for(p.engine));
        std::uniform_int_distribution<int> gene(0, param_upper_bound(p.engine, 6));
        for (int trial = 0; trial < 2000; ++trial) {
            std::vector<int> v(gene_count(p.engine, 6));
            for (auto& x : v) x = gene(rng);
            const auto tree = perturb(standard, {p.engine, v});
            tree.check_invariants();
            REQUIRE(to_bracket_string(tree) == oracle::run(p.oracle, 6, v));
        }
    }
}
