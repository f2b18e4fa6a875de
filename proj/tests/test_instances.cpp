#include "doctest.h"
#include "helpers.hpp"
#include "maf/errors.hpp"
#include "maf/forest.hpp"
#include "maf/instances.hpp"
#include "maf/quartets.hpp"

using namespace maf;
using maft::grid_pair;
using maft::tree_from;

TEST_SUITE("instances") {

TEST_CASE("grid construction") {
    SUBCASE("smallest grid is the incompatible quartet pair") {
        auto [t1, t2] = generate_caterpillar_grid(2);
        CHECK(t1.num_taxa() == 4);
        CHECK(write_newick(t1) == "('(1,1)','(1,2)',('(2,1)','(2,2)'));");
        CHECK(write_newick(t2) == "('(1,1)',('(1,2)','(2,2)'),'(2,1)');");
        CHECK(!is_isomorphic(t1, t2));
    }
    SUBCASE("edge counts") {
        for (int ell : {2, 3, 4, 5, 6}) {
            auto [t1, t2] = generate_caterpillar_grid(ell);
            CHECK(t1.num_edges() == 2 * ell * ell - 3);
            CHECK(t2.num_edges() == 2 * ell * ell - 3);
            CHECK(t1.same_taxa(t2));
        }
    }
    SUBCASE("leaf orders follow row-major and column-major sorting") {
        auto trees = grid_pair(4);
        std::array<int, 4> corner{};
        int i = 0;
        for (const char* s : {"(1,1)", "(1,2)", "(2,1)", "(2,2)"})
            corner[i++] = trees[0].taxon_id(s);
        // First tree groups by rows, second by columns.
        CHECK(quartet_topology(trees[0], corner).partner_of_first == 1);
        CHECK(quartet_topology(trees[1], corner).partner_of_first == 2);
        PhyloTree r2 = restrict_to(trees[1], corner);
        CHECK(is_isomorphic(r2, tree_from("(('(1,1)','(2,1)'),('(1,2)','(2,2)'));")));
        PhyloTree r1 = restrict_to(trees[0], corner);
        CHECK(is_isomorphic(r1, tree_from("(('(1,1)','(1,2)'),('(2,1)','(2,2)'));")));
    }
    SUBCASE("rejects tiny parameters") {
        CHECK_THROWS_AS(generate_caterpillar_grid(1), ValidationError);
    }
}

TEST_CASE("separating edges") {
    SUBCASE("2-grid: the middle edge") {
        auto trees = grid_pair(2);
        CHECK(separating_edges(trees[0], GridRole::RowMajor, 2) == std::vector<int>{2});
        // Same structural edge in T2, under T2's own canonical numbering: the
        // unique internal (non-pendant) edge.
        std::vector<char> pendant(trees[1].num_edges(), 0);
        for (int x = 0; x < 4; ++x) pendant[trees[1].pendant_edge(x)] = 1;
        std::vector<int> internal_edges;
        for (int e = 0; e < trees[1].num_edges(); ++e)
            if (!pendant[e]) internal_edges.push_back(e);
        CHECK(separating_edges(trees[1], GridRole::ColMajor, 2) == internal_edges);
    }
    SUBCASE("counts: ell-1 distinct edges per tree, 2*ell-2 in total") {
        for (int ell : {3, 4, 5}) {
            auto trees = grid_pair(ell);
            auto s1 = separating_edges(trees[0], GridRole::RowMajor, ell);
            auto s2 = separating_edges(trees[1], GridRole::ColMajor, ell);
            CHECK(static_cast<int>(s1.size()) == ell - 1);
            CHECK(static_cast<int>(s2.size()) == ell - 1);
            CHECK(std::adjacent_find(s1.begin(), s1.end()) == s1.end());
            CHECK(std::adjacent_find(s2.begin(), s2.end()) == s2.end());
            CHECK(static_cast<int>(s1.size() + s2.size()) == 2 * ell - 2);
        }
    }
    SUBCASE("each lies on every path between consecutive row blocks") {
        const int ell = 4;
        auto trees = grid_pair(ell);
        auto seps = separating_edges(trees[0], GridRole::RowMajor, ell);
        for (int k = 1; k < ell; ++k) {
            int e = -1;
            for (int cand : seps) {
                bool on_all = true;
                for (int j = 1; j <= ell && on_all; ++j)
                    for (int jp = 1; jp <= ell && on_all; ++jp) {
                        int a = trees[0].taxon_id("(" + std::to_string(k) + "," +
                                                  std::to_string(j) + ")");
                        int b = trees[0].taxon_id("(" + std::to_string(k + 1) + "," +
                                                  std::to_string(jp) + ")");
                        auto path = spanning_path_edges(trees[0], a, b);
                        on_all = std::find(path.begin(), path.end(), cand) != path.end();
                    }
                if (on_all) {
                    e = cand;
                    break;
                }
            }
            CHECK(e >= 0);   // the k-th block boundary has its separating edge
        }
    }
    SUBCASE("rejects non-grid trees") {
        PhyloTree not_grid = random_tree(instance_labels(4), 9);
        CHECK_THROWS_AS(separating_edges(not_grid, GridRole::RowMajor, 2), ValidationError);
        auto trees = grid_pair(2);
        CHECK_THROWS_AS(separating_edges(trees[0], GridRole::ColMajor, 2), ValidationError);
        CHECK_THROWS_AS(separating_edges(trees[0], GridRole::RowMajor, 3), ValidationError);
    }
}

TEST_CASE("pendant quarter solution") {
    SUBCASE("objective is a quarter of the leaves") {
        auto trees = grid_pair(4);
        FractionalSolution x = pendant_quarter_solution(trees[0]);
        CHECK(x.objective == Rat(4));
        int quarters = 0;
        for (const Rat& v : x.values) {
            if (v == Rat(1, 4)) ++quarters;
            else CHECK(v == Rat(0));
        }
        CHECK(quarters == 16);
    }
    SUBCASE("feasible for the model of its own instance") {
        for (int ell : {2, 3, 4, 5}) {
            auto trees = grid_pair(ell);
            LpModel model = build_model(trees);
            FractionalSolution x = pendant_quarter_solution(trees[0]);
            CHECK(x.objective == Rat(ell * ell, 4));
            CHECK(satisfies_all(model, x.values));
        }
        for (uint64_t seed = 1; seed <= 50; ++seed) {
            int n = 4 + static_cast<int>(seed % 7);
            int t = 2 + static_cast<int>(seed % 2);
            auto trees = random_instance({n, t, seed * 23});
            LpModel model = build_model(trees);
            FractionalSolution x = pendant_quarter_solution(trees[0]);
            CHECK(x.objective == Rat(n, 4));
            CHECK(satisfies_all(model, x.values));
        }
    }
}

TEST_CASE("component lower bound") {
    CHECK(grid_af_component_lower_bound(2) == 2);
    CHECK(grid_af_component_lower_bound(3) == 5);
    CHECK(grid_af_component_lower_bound(4) == 10);
    CHECK_THROWS_AS(grid_af_component_lower_bound(1), ValidationError);
    // Oracle-checkable sizes actually meet the bound.
    CHECK(brute_force_maf(grid_pair(2)).forest.k() >= 2);
    CHECK(brute_force_maf(grid_pair(3)).forest.k() >= 5);
}

TEST_CASE("random instances") {
    SUBCASE("deterministic from the seed") {
        auto a = random_instance({6, 2, 1});
        auto b = random_instance({6, 2, 1});
        REQUIRE(a.size() == 2);
        CHECK(write_newick(a[0]) == write_newick(b[0]));
        CHECK(write_newick(a[1]) == write_newick(b[1]));
        CHECK(write_newick(a[0]) == "(t1,((t2,t5),(t3,t6)),t4);");
    }
    SUBCASE("valid trees with shared labels") {
        auto trees = random_instance({12, 3, 77});
        CHECK(trees.size() == 3);
        for (const auto& t : trees) {
            CHECK(t.num_taxa() == 12);
            CHECK(t.num_edges() == 21);
            CHECK(t.same_taxa(trees[0]));
        }
        CHECK(trees[0].labels()[0] == "t01");
        CHECK(trees[0].labels()[11] == "t12");
    }
    SUBCASE("identical sub-seeds give isomorphic trees and no quartets") {
        auto labels = instance_labels(8);
        PhyloTree t1 = random_tree(labels, 42);
        PhyloTree t2 = random_tree(labels, 42);
        CHECK(is_isomorphic(t1, t2));
        std::vector<PhyloTree> trees{t1, t2};
        CHECK(incompatible_quartets(trees).empty());
    }
    SUBCASE("argument guards") {
        CHECK_THROWS_AS(random_instance({3, 2, 1}), ValidationError);
        CHECK_THROWS_AS(random_instance({4, 1, 1}), ValidationError);
    }
}

} // TEST_SUITE
