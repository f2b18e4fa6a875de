#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "maf/quartets.hpp"
#include "maf/rational.hpp"

namespace maf {

// Covering program over the edges of T1: minimize the number of chosen edges
// subject to every row (an edge-index set) containing at least one.
struct LpModel {
    int num_vars = 0;
    std::vector<std::vector<int>> rows;   // sorted, non-empty, duplicate-free
};

LpModel build_model(const std::vector<PhyloTree>& trees);
LpModel model_from_constraints(int num_vars, const std::vector<QuartetConstraint>& constraints);

struct FractionalSolution {
    std::vector<Rat> values;   // per edge id, in [0,1]
    Rat objective;             // sum of values
};

struct IntegralSolution {
    std::vector<int> cut;        // ascending edge ids
    int objective = 0;           // |cut|
    bool optimal = true;
    Rat lower_bound;             // proved bound; equals objective when optimal
    long long nodes_explored = 0;
};

// Exact optimum of the relaxation (0 <= x_e <= 1), solved by a bounded-
// variable primal simplex with Bland's rule over a deterministically grown
// active-row subset; the result is verified feasible for every row, which
// certifies optimality for the whole model.
FractionalSolution solve_lp(const LpModel& model);

// Double-precision variant of the same simplex (1e-9 tolerances), exposed for
// speed comparisons only; values are clamped into [0,1] and converted to
// exact rationals, but carry no exactness guarantee.
FractionalSolution solve_lp_float(const LpModel& model);

enum class IlpMode { Auto, Exhaustive, BranchAndBound };

// Exact 0/1 optimum.  Auto picks exhaustive subset enumeration when
// 2^num_vars <= 2^20 and otherwise branch-and-bound on the most fractional
// variable with the LP bound.  On budget exhaustion the incumbent is
// returned with optimal=false and the root LP bound.
IntegralSolution solve_ilp_exact(const LpModel& model, long long node_budget = 1000000,
                                 IlpMode mode = IlpMode::Auto);

// Exact feasibility checks, independent of the solvers.
bool satisfies_all(const LpModel& model, const std::vector<Rat>& x);
bool cut_satisfies_all(const LpModel& model, std::span<const int> cut);

// One row per line: the variable indices, then ">= 1".
void write_model(const LpModel& model, std::ostream& out);

} // namespace maf
