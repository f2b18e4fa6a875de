#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "maf/phylo.hpp"

namespace maf {

// The pairing a binary tree induces on four taxa.  `taxa` is ascending;
// `partner_of_first` is the position (1..3) of the taxon paired with taxa[0].
struct QuartetTopology {
    std::array<int, 4> taxa;
    int partner_of_first = 1;

    // {{a,b},{c,d}} with a < b, c < d, a < c.
    std::pair<std::pair<int, int>, std::pair<int, int>> sides() const;
    friend bool operator==(const QuartetTopology&, const QuartetTopology&) = default;
};

QuartetTopology quartet_topology(const PhyloTree& tree, std::array<int, 4> quartet);

// One covering row of the model: a quartet on which T1 and the witness tree
// disagree, plus the edges of the two T1 paths spanned by T1's pairing.
struct QuartetConstraint {
    std::array<int, 4> quartet;   // ascending taxon ids
    int witness_tree = 2;         // 1-based tree index, >= 2
    std::vector<int> lq_edges;    // ascending edge ids of T1

    friend bool operator==(const QuartetConstraint&, const QuartetConstraint&) = default;
};

// All incompatible quartets of trees[0] vs each later tree (smallest witness
// kept), deduplicated by lq_edges, in quartet-rank order.  Parallelized over
// contiguous rank chunks; the merge preserves rank order, so the result is
// identical to the serial scan.
std::vector<QuartetConstraint> incompatible_quartets(const std::vector<PhyloTree>& trees);

// Serial reference: per quartet, restrict every tree and compare by
// isomorphism.  Kept for tests and the benchmark; output is identical to
// incompatible_quartets.
std::vector<QuartetConstraint> incompatible_quartets_reference(const std::vector<PhyloTree>& trees);

std::string format_constraint(const QuartetConstraint& c, const PhyloTree& t1);
void dump_constraints(const std::vector<QuartetConstraint>& cs, const PhyloTree& t1,
                      std::ostream& out);

} // namespace maf
