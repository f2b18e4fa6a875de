#pragma once

#include <span>
#include <utility>
#include <vector>

#include "maf/lp.hpp"
#include "maf/phylo.hpp"

namespace maf {

// Threshold rounding of a nonnegative fractional edge assignment on T1.  One
// post-order pass from the chosen root leaf accumulates the residual subtree
// weight per edge; an edge whose weight reaches 1/4 is cut and contributes 0
// upward.  This realizes the repeated minimal-violating-edge selection in a
// single pass because post-order reaches a minimal violating edge first.
// The returned cut is ascending; the result does not depend on sibling
// traversal order (the flag exists so tests can prove that).
std::vector<int> round_quarter(const PhyloTree& t1, const FractionalSolution& x,
                               int root_taxon = 0, bool reverse_siblings = false);

struct RoundingCertificate {
    int cut_size = 0;
    Rat fractional_objective;                            // sum of x
    bool ratio_ok = false;                               // cut_size <= 4 * objective
    std::vector<std::pair<int, Rat>> insertion_weights;  // per cut edge, each >= 1/4
    bool thresholds_ok = false;
    bool residuals_ok = false;                           // non-cut edges end below 1/4
    bool descendant_sets_disjoint = false;               // final D(e) over cut edges
    bool path_mass_ok = false;   // same-component leaf pairs carry mass < 1/2

    bool all_ok() const {
        return ratio_ok && thresholds_ok && residuals_ok && descendant_sets_disjoint &&
               path_mass_ok;
    }
};

// Re-runs the pass, requires it to reproduce `cut`, and verifies every
// guarantee with exact arithmetic.  Throws InternalError on any failure;
// failures are algorithm bugs, not input errors.
RoundingCertificate rounding_certificate(const PhyloTree& t1, const FractionalSolution& x,
                                         std::span<const int> cut, int root_taxon = 0);

} // namespace maf
