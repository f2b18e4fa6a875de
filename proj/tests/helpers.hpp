#pragma once

#include <string>
#include <vector>

#include "maf/instances.hpp"
#include "maf/phylo.hpp"

namespace maft {

inline maf::PhyloTree tree_from(const std::string& newick) {
    return maf::parse_newick_line(newick);
}

inline std::vector<maf::PhyloTree> pair_from(const std::string& first,
                                             const std::string& second) {
    std::vector<maf::PhyloTree> trees;
    trees.push_back(tree_from(first));
    trees.push_back(tree_from(second));
    return trees;
}

inline std::vector<maf::PhyloTree> grid_pair(int ell) {
    auto [t1, t2] = maf::generate_caterpillar_grid(ell);
    std::vector<maf::PhyloTree> trees;
    trees.push_back(std::move(t1));
    trees.push_back(std::move(t2));
    return trees;
}

inline std::vector<maf::PhyloTree> random_pair(int n, uint64_t seed, int t = 2) {
    return maf::random_instance({n, t, seed});
}

// Cheap deterministic bits for sampling cuts and the like.
struct XorShift {
    uint64_t s;
    explicit XorShift(uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
};

} // namespace maft
