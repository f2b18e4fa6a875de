#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "maf/errors.hpp"
#include "maf/instances.hpp"
#include "maf/quartets.hpp"

using namespace maf;
using maft::grid_pair;
using maft::random_pair;
using maft::tree_from;

namespace {

std::set<std::vector<int>> lq_sets(const std::vector<QuartetConstraint>& cs) {
    std::set<std::vector<int>> out;
    for (const auto& c : cs) out.insert(c.lq_edges);
    return out;
}

} // namespace

TEST_SUITE("quartets") {

TEST_CASE("topology of the labelled quartet tree") {
    PhyloTree t = tree_from("((a,b),(c,d));");
    QuartetTopology topo = quartet_topology(t, {0, 1, 2, 3});
    CHECK(topo.partner_of_first == 1);
    auto [s1, s2] = topo.sides();
    CHECK(s1 == std::pair<int, int>{0, 1});
    CHECK(s2 == std::pair<int, int>{2, 3});
    // Input order must not matter.
    CHECK(quartet_topology(t, {3, 0, 2, 1}) == topo);

    CHECK_THROWS_AS(quartet_topology(t, {0, 1, 2, 2}), ValidationError);
    CHECK_THROWS_AS(quartet_topology(t, {0, 1, 2, 7}), ValidationError);
}

TEST_CASE("grid pair induces opposite pairings on the corner quartet") {
    auto trees = grid_pair(4);
    std::array<int, 4> q{};
    int i = 0;
    for (const char* s : {"(1,1)", "(1,2)", "(2,1)", "(2,2)"})
        q[i++] = trees[0].taxon_id(s);
    CHECK(quartet_topology(trees[0], q).partner_of_first == 1);   // rows pair
    CHECK(quartet_topology(trees[1], q).partner_of_first == 2);   // columns pair
}

TEST_CASE("topology agrees with the restriction for random inputs") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        PhyloTree t = random_tree(instance_labels(9), seed);
        maft::XorShift rng(seed * 77);
        for (int trial = 0; trial < 10; ++trial) {
            std::array<int, 4> q{};
            std::set<int> picked;
            while (picked.size() < 4) picked.insert(static_cast<int>(rng.next() % 9));
            int i = 0;
            for (int x : picked) q[i++] = x;

            QuartetTopology fast = quartet_topology(t, q);
            PhyloTree r = restrict_to(t, q);
            // In the 4-leaf restriction local ids follow the sorted quartet.
            std::array<int, 4> local{0, 1, 2, 3};
            QuartetTopology slow = quartet_topology(r, local);
            CHECK(fast.partner_of_first == slow.partner_of_first);
        }
    }
}

TEST_CASE("identical trees have no incompatible quartets") {
    auto trees = maft::pair_from("(a,(b,(c,(d,e))));", "(a,(b,(c,(d,e))));");
    CHECK(incompatible_quartets(trees).empty());
    CHECK(incompatible_quartets_reference(trees).empty());
}

TEST_CASE("the 2-grid has exactly one constraint over the pendant edges") {
    auto trees = grid_pair(2);
    auto cs = incompatible_quartets(trees);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].quartet == std::array<int, 4>{0, 1, 2, 3});
    CHECK(cs[0].witness_tree == 2);
    CHECK(cs[0].lq_edges == std::vector<int>{0, 1, 3, 4});
    CHECK(format_constraint(cs[0], trees[0]) ==
          "Q=((1,1),(1,2),(2,1),(2,2)) witness=2 L(Q)=[0,1,3,4]");
}

TEST_CASE("small instances have no quartets at all") {
    auto trees = maft::pair_from("(a,b,c);", "(a,b,c);");
    CHECK(incompatible_quartets(trees).empty());
}

TEST_CASE("input validation") {
    std::vector<PhyloTree> one;
    one.push_back(tree_from("((a,b),(c,d));"));
    CHECK_THROWS_AS(incompatible_quartets(one), ValidationError);
    one.push_back(tree_from("((a,b),(c,e));"));
    CHECK_THROWS_AS(incompatible_quartets(one), ValidationError);
}

TEST_CASE("parallel enumeration equals the serial restriction oracle") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        int n = 4 + static_cast<int>(seed % 5);
        int t = 2 + static_cast<int>(seed % 2);
        auto trees = random_instance({n, t, seed});
        auto fast = incompatible_quartets(trees);
        auto slow = incompatible_quartets_reference(trees);
        CHECK(fast == slow);
    }
    // And on the structured family.
    for (int ell : {2, 3}) {
        auto trees = grid_pair(ell);
        CHECK(incompatible_quartets(trees) == incompatible_quartets_reference(trees));
    }
}

TEST_CASE("constraints carry at least the four pendant edges") {
    for (uint64_t seed = 40; seed <= 48; ++seed) {
        auto trees = random_pair(8, seed);
        for (const auto& c : incompatible_quartets(trees)) {
            CHECK(c.lq_edges.size() >= 4);
            for (int x : c.quartet) {
                int pe = trees[0].pendant_edge(x);
                CHECK(std::find(c.lq_edges.begin(), c.lq_edges.end(), pe) != c.lq_edges.end());
            }
            // Re-check incompatibility with the slow route.
            PhyloTree r1 = restrict_to(trees[0], c.quartet);
            PhyloTree rw = restrict_to(trees[c.witness_tree - 1], c.quartet);
            CHECK(!is_isomorphic(r1, rw));
        }
    }
}

TEST_CASE("distinct constraints have distinct edge sets") {
    // L(Q) contains exactly its own quartet's pendant edges, so dedup by
    // lq_edges can never merge different quartets; the sets stay unique.
    for (uint64_t seed = 60; seed <= 64; ++seed) {
        auto trees = random_pair(9, seed);
        auto cs = incompatible_quartets(trees);
        CHECK(lq_sets(cs).size() == cs.size());
    }
}

TEST_CASE("enumeration over many trees equals the union of pairwise runs") {
    for (uint64_t seed = 70; seed <= 75; ++seed) {
        auto trees = random_instance({7, 3, seed});
        auto all = incompatible_quartets(trees);

        std::set<std::vector<int>> pairwise;
        for (size_t i = 1; i < trees.size(); ++i) {
            std::vector<PhyloTree> pr{trees[0], trees[i]};
            for (const auto& c : incompatible_quartets(pr)) pairwise.insert(c.lq_edges);
        }
        CHECK(lq_sets(all) == pairwise);

        // Adding a tree never removes a constraint.
        std::vector<PhyloTree> two{trees[0], trees[1]};
        auto base = lq_sets(incompatible_quartets(two));
        auto grown = lq_sets(all);
        CHECK(std::includes(grown.begin(), grown.end(), base.begin(), base.end()));
    }
}

TEST_CASE("witness is the smallest disagreeing tree") {
    // T3 disagrees with T1 where T2 agrees, and vice versa.
    std::vector<PhyloTree> trees;
    trees.push_back(tree_from("((a,b),(c,d));"));
    trees.push_back(tree_from("((a,b),(c,d));"));
    trees.push_back(tree_from("((a,c),(b,d));"));
    auto cs = incompatible_quartets(trees);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].witness_tree == 3);
}

TEST_CASE("determinism") {
    auto trees = random_pair(9, 123);
    CHECK(incompatible_quartets(trees) == incompatible_quartets(trees));
}

} // TEST_SUITE
