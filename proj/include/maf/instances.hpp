#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "maf/lp.hpp"
#include "maf/phylo.hpp"

namespace maf {

// The hard caterpillar pair on the ell x ell label grid "(i,j)": both trees
// are caterpillars, the first attaches leaves sorted by row then column, the
// second by column then row.  Requires ell >= 2.
std::pair<PhyloTree, PhyloTree> generate_caterpillar_grid(int ell);

enum class GridRole { RowMajor, ColMajor };

// The ell-1 spine edges that lie on every path between consecutive row
// blocks (RowMajor) or column blocks (ColMajor).  Validates that the tree is
// the expected grid caterpillar.
std::vector<int> separating_edges(const PhyloTree& tree, GridRole role, int ell);

// 1/4 on every pendant edge, 0 elsewhere: objective exactly n/4, and
// feasible for any model built over t1 because every constraint row contains
// its quartet's four pendant edges.
FractionalSolution pendant_quarter_solution(const PhyloTree& t1);

// Certified lower bound ell^2 - 2*ell + 2 on the component count of any
// agreement forest of the ell-grid pair.
long long grid_af_component_lower_bound(int ell);

struct RandomInstanceSpec {
    int n = 0;          // taxa, >= 4
    int t = 0;          // trees, >= 2
    uint64_t seed = 0;
};

// Uniform binary topologies by sequential random leaf insertion, one
// reproducible sub-seed per tree.
std::vector<PhyloTree> random_instance(const RandomInstanceSpec& spec);
PhyloTree random_tree(const std::vector<std::string>& labels, uint64_t seed);
std::vector<std::string> instance_labels(int n);        // "t01".."tNN"
uint64_t instance_tree_seed(uint64_t seed, int index);  // sub-seed of tree #index

} // namespace maf
