#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maf/lp.hpp"
#include "maf/phylo.hpp"

namespace maf {

// A partition of the taxon set in canonical order: members ascending within
// a block, blocks ordered by smallest member.
struct AgreementForest {
    std::vector<std::vector<int>> components;
    int k() const { return static_cast<int>(components.size()); }

    friend bool operator==(const AgreementForest&, const AgreementForest&) = default;
};

// Leaves grouped by connected component of T1 minus the cut edges.
AgreementForest partition_from_cut(const PhyloTree& t1, std::span<const int> cut);

struct AfVerdict {
    bool accepted = false;
    std::string reason;        // empty on accept
    // Restriction witness: trees (1-based) whose restrictions to the
    // component differ ...
    int witness_tree = -1;
    int witness_tree2 = -1;
    int witness_component = -1;
    // ... or overlap witness: two components sharing an edge in a tree.
    int witness_component2 = -1;
    int witness_edge = -1;
};

// Checks both agreement-forest conditions: isomorphic restrictions per
// component across trees (against tree 1, sufficient by transitivity) and
// pairwise edge-disjoint minimal subtrees within every tree.
AfVerdict verify_af(const std::vector<PhyloTree>& trees, const AgreementForest& forest);

struct EquivalenceReport {
    bool cut_feasible = false;   // cut hits every model row
    bool af_accepted = false;    // partition of the cut verifies
};

// Evaluates both sides independently and throws InternalError if they ever
// disagree; standing metamorphic check.
EquivalenceReport verify_cut_feasibility_equivalence(const std::vector<PhyloTree>& trees,
                                                     std::span<const int> cut);
EquivalenceReport verify_cut_feasibility_equivalence(const std::vector<PhyloTree>& trees,
                                                     std::span<const int> cut,
                                                     const LpModel& model);

struct MafResult {
    AgreementForest forest;
    std::vector<int> cut;   // ascending, |cut| == k - 1
};

// Exhaustive oracle: enumerates edge subsets of T1 by increasing size and
// returns the first whose partition verifies.  Guarded to at most 20 edges.
// The parallel version shards each size class over subset ranks and keeps
// the minimum feasible rank, so its result equals the serial scan's.
MafResult brute_force_maf(const std::vector<PhyloTree>& trees);
MafResult brute_force_maf_serial(const std::vector<PhyloTree>& trees);

// k - 1, defined only for two trees.
std::optional<int> tbr_estimate(int k, int t);

} // namespace maf
