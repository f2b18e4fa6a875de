#pragma once

#include <iosfwd>
#include <vector>

#include "maf/rational.hpp"

namespace maf {

// One grid size of the integrality-gap sweep.  The LP objective and rounded
// cut are measured; the ILP lower bound is the analytic ell^2 - 2*ell + 1
// (component bound minus one), and the certified gap is 4*(ell^2-2*ell+1)/ell^2.
struct GapStudyRow {
    int ell = 0;
    int n = 0;
    long long constraints = 0;
    bool skipped = false;        // over the constraint budget; measured fields empty
    Rat lp_objective;
    long long ilp_lower_bound = 0;
    Rat certified_gap;
    int rounded_cut_size = 0;
};

std::vector<GapStudyRow> run_gap_study(int ell_min, int ell_max,
                                       long long max_constraints = 200000);

// CSV: ell,n,constraints,lp_obj_num,lp_obj_den,ilp_lower_bound,certified_gap,
// rounded_cut_size
void write_gap_csv(const std::vector<GapStudyRow>& rows, std::ostream& out);

} // namespace maf
