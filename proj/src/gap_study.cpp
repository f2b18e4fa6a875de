#include "maf/gap_study.hpp"

#include <ostream>

#include "maf/errors.hpp"
#include "maf/forest.hpp"
#include "maf/instances.hpp"
#include "maf/rounding.hpp"

namespace maf {

std::vector<GapStudyRow> run_gap_study(int ell_min, int ell_max, long long max_constraints) {
    if (ell_min < 2 || ell_max < ell_min)
        throw ValidationError("gap study needs 2 <= ell_min <= ell_max");
    std::vector<GapStudyRow> rows;
    for (int ell = ell_min; ell <= ell_max; ++ell) {
        GapStudyRow row;
        row.ell = ell;
        row.n = ell * ell;
        row.ilp_lower_bound = grid_af_component_lower_bound(ell) - 1;
        row.certified_gap = Rat(4 * row.ilp_lower_bound, static_cast<long long>(row.n));

        auto [t1, t2] = generate_caterpillar_grid(ell);
        std::vector<PhyloTree> trees;
        trees.push_back(std::move(t1));
        trees.push_back(std::move(t2));
        LpModel model = build_model(trees);
        row.constraints = static_cast<long long>(model.rows.size());
        if (row.constraints > max_constraints) {
            row.skipped = true;
            rows.push_back(std::move(row));
            continue;
        }

        FractionalSolution lp = solve_lp(model);
        row.lp_objective = lp.objective;
        std::vector<int> cut = round_quarter(trees[0], lp);
        rounding_certificate(trees[0], lp, cut);
        AgreementForest forest = partition_from_cut(trees[0], cut);
        if (!verify_af(trees, forest).accepted)
            throw InternalError("rounded forest failed verification in the gap study");
        row.rounded_cut_size = static_cast<int>(cut.size());
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_gap_csv(const std::vector<GapStudyRow>& rows, std::ostream& out) {
    out << "ell,n,constraints,lp_obj_num,lp_obj_den,ilp_lower_bound,certified_gap,"
           "rounded_cut_size\n";
    for (const auto& row : rows) {
        out << row.ell << "," << row.n << "," << row.constraints << ",";
        if (row.skipped) {
            out << ",,";
        } else {
            out << row.lp_objective.num().to_string() << ","
                << row.lp_objective.den().to_string() << ",";
        }
        out << row.ilp_lower_bound << "," << row.certified_gap.to_decimal_string() << ",";
        if (!row.skipped) out << row.rounded_cut_size;
        out << "\n";
    }
}

} // namespace maf
