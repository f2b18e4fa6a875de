#include "maf/lp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

#include "maf/errors.hpp"

namespace maf {

namespace {

// Numeric policy: exact signs for Rat, epsilon bands for double.
struct RatOps {
    using Num = Rat;
    static bool pos(const Rat& v) { return v.sign() > 0; }
    static bool neg(const Rat& v) { return v.sign() < 0; }
    static bool zero(const Rat& v) { return v.sign() == 0; }
    static bool lt(const Rat& a, const Rat& b) { return a < b; }
};

struct DoubleOps {
    using Num = double;
    static constexpr double kEps = 1e-9;
    static bool pos(double v) { return v > kEps; }
    static bool neg(double v) { return v < -kEps; }
    static bool zero(double v) { return std::fabs(v) <= kEps; }
    static bool lt(double a, double b) { return a < b - kEps; }
};

enum : uint8_t { kAtLower = 0, kAtUpper = 1, kBasic = 2 };

// Bounded-variable primal simplex for min sum(x) s.t. A x - s = 1 over the
// given rows, lb <= x <= ub, s >= 0.  Starts from every structural variable
// at its upper bound (surplus basic), which is feasible whenever each row has
// upper-bound mass >= 1.  Entering and leaving choices follow Bland's rule;
// ties between a row and the entering variable's own bound range flip the
// bound (the step is strictly improving either way).
template <class Ops>
class BoundedSimplex {
public:
    using Num = typename Ops::Num;

    BoundedSimplex(const std::vector<std::vector<int>>& all_rows,
                   const std::vector<int>& active, const std::vector<Num>& lb,
                   const std::vector<Num>& ub)
        : m_(static_cast<int>(lb.size())), k_(static_cast<int>(active.size())) {
        const int total = m_ + k_;
        lb_.assign(total, Num(0));
        ub_.assign(total, Num(0));
        ub_infinite_.assign(total, 0);
        state_.assign(total, kAtLower);
        red_.assign(total, Num(0));
        row_of_.assign(total, -1);
        for (int j = 0; j < m_; ++j) {
            lb_[j] = lb[j];
            ub_[j] = ub[j];
            state_[j] = kAtUpper;
            red_[j] = Num(1);
            obj_ += ub[j];
        }
        for (int i = 0; i < k_; ++i) ub_infinite_[m_ + i] = 1;

        w_.assign(k_, std::vector<Num>(total, Num(0)));
        beta_.assign(k_, Num(0));
        basis_.assign(k_, 0);
        for (int i = 0; i < k_; ++i) {
            Num activity(0);
            for (int j : all_rows[active[i]]) {
                w_[i][j] = Num(-1);
                activity += ub[j];
            }
            w_[i][m_ + i] = Num(1);
            beta_[i] = activity - Num(1);
            if (Ops::neg(beta_[i]))
                throw InternalError("covering start is infeasible; caller must prefilter rows");
            basis_[i] = m_ + i;
            state_[m_ + i] = kBasic;
            row_of_[m_ + i] = i;
        }
    }

    void solve() {
        const long long iter_limit = 4000000;
        for (long long iter = 0;; ++iter) {
            if (iter > iter_limit) throw InternalError("simplex exceeded its iteration guard");

            int j = -1, dir = 0;
            const int total = m_ + k_;
            for (int v = 0; v < total; ++v) {
                if (state_[v] == kBasic) continue;
                if (!ub_infinite_[v] && !Ops::lt(lb_[v], ub_[v])) continue;   // fixed
                if (state_[v] == kAtLower && Ops::neg(red_[v])) { j = v; dir = +1; break; }
                if (state_[v] == kAtUpper && Ops::pos(red_[v])) { j = v; dir = -1; break; }
            }
            if (j < 0) return;

            // Ratio test.
            bool unbounded = state_[j] == kAtLower && ub_infinite_[j];
            Num delta = unbounded ? Num(0) : ub_[j] - lb_[j];
            int leave_row = -1;
            int leave_to = kAtLower;
            for (int r = 0; r < k_; ++r) {
                const Num& wrj = w_[r][j];
                if (Ops::zero(wrj)) continue;
                Num rho = dir > 0 ? -wrj : wrj;   // rate of the basic value per unit step
                Num cand;
                int to;
                if (Ops::neg(rho)) {
                    cand = (beta_[r] - lb_[basis_[r]]) / -rho;
                    to = kAtLower;
                } else {
                    if (ub_infinite_[basis_[r]]) continue;
                    cand = (ub_[basis_[r]] - beta_[r]) / rho;
                    to = kAtUpper;
                }
                if (Ops::neg(cand)) cand = Num(0);   // degenerate beyond-bound guard
                if (unbounded || Ops::lt(cand, delta)) {
                    unbounded = false;
                    delta = cand;
                    leave_row = r;
                    leave_to = to;
                } else if (leave_row >= 0 && !Ops::lt(delta, cand) &&
                           basis_[r] < basis_[leave_row]) {
                    leave_row = r;
                    leave_to = to;
                }
            }
            if (unbounded) throw InternalError("unbounded simplex direction in a covering LP");

            Num move = dir > 0 ? delta : Num(0) - delta;
            obj_ += red_[j] * move;

            if (leave_row < 0) {
                for (int r = 0; r < k_; ++r)
                    if (!Ops::zero(w_[r][j])) beta_[r] -= w_[r][j] * move;
                state_[j] = state_[j] == kAtLower ? kAtUpper : kAtLower;
                continue;
            }

            for (int r = 0; r < k_; ++r)
                if (r != leave_row && !Ops::zero(w_[r][j])) beta_[r] -= w_[r][j] * move;

            const int lv = basis_[leave_row];
            state_[lv] = static_cast<uint8_t>(leave_to);
            row_of_[lv] = -1;
            Num enter_val = (state_[j] == kAtLower ? lb_[j] : ub_[j]) + move;
            state_[j] = kBasic;
            basis_[leave_row] = j;
            row_of_[j] = leave_row;
            beta_[leave_row] = enter_val;

            auto& prow = w_[leave_row];
            const Num piv = prow[j];
            for (auto& c : prow)
                if (!Ops::zero(c)) c /= piv;
            prow[j] = Num(1);
            for (int r = 0; r < k_; ++r) {
                if (r == leave_row) continue;
                const Num f = w_[r][j];
                if (Ops::zero(f)) continue;
                auto& row = w_[r];
                for (int c = 0; c < total; ++c)
                    if (!Ops::zero(prow[c])) row[c] -= f * prow[c];
                row[j] = Num(0);
            }
            const Num fd = red_[j];
            if (!Ops::zero(fd)) {
                for (int c = 0; c < total; ++c)
                    if (!Ops::zero(prow[c])) red_[c] -= fd * prow[c];
                red_[j] = Num(0);
            }
        }
    }

    std::vector<Num> structural_values() const {
        std::vector<Num> x(m_, Num(0));
        for (int j = 0; j < m_; ++j) {
            if (state_[j] == kBasic) x[j] = beta_[row_of_[j]];
            else if (state_[j] == kAtUpper) x[j] = ub_[j];
            else x[j] = lb_[j];
        }
        return x;
    }

    const Num& objective() const { return obj_; }

private:
    int m_, k_;
    std::vector<std::vector<Num>> w_;
    std::vector<Num> beta_;
    std::vector<int> basis_;
    std::vector<int> row_of_;
    std::vector<Num> red_;
    std::vector<uint8_t> state_;
    std::vector<Num> lb_, ub_;
    std::vector<uint8_t> ub_infinite_;
    Num obj_{};
};

constexpr int kSeedRows = 256;
constexpr int kBatchRows = 192;
constexpr int kMaxActiveRows = 20000;
constexpr int kMaxRounds = 512;

// Lazy row activation: solve over a seed subset, activate violated rows in a
// fixed (size, index) order, repeat.  The final iterate is feasible for every
// row and optimal for the activated subset, hence optimal for the model.
template <class Ops>
std::vector<typename Ops::Num> solve_covering(const std::vector<std::vector<int>>& rows,
                                              const std::vector<typename Ops::Num>& lb,
                                              const std::vector<typename Ops::Num>& ub) {
    using Num = typename Ops::Num;
    const int q = static_cast<int>(rows.size());
    if (q == 0) return lb;

    std::vector<int> order(q);
    for (int i = 0; i < q; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (rows[a].size() != rows[b].size()) return rows[a].size() < rows[b].size();
        return a < b;
    });

    std::vector<char> active_flag(q, 0);
    std::vector<int> active;
    for (int i = 0; i < std::min(q, kSeedRows); ++i) {
        active.push_back(order[i]);
        active_flag[order[i]] = 1;
    }

    for (int round = 0; round < kMaxRounds; ++round) {
        BoundedSimplex<Ops> simplex(rows, active, lb, ub);
        simplex.solve();
        std::vector<Num> x = simplex.structural_values();

        int added = 0;
        for (int idx : order) {
            if (active_flag[idx]) continue;
            Num sum(0);
            for (int j : rows[idx]) sum += x[j];
            if (Ops::lt(sum, Num(1))) {
                active.push_back(idx);
                active_flag[idx] = 1;
                if (++added >= kBatchRows) break;
            }
        }
        if (added == 0) return x;
        if (static_cast<int>(active.size()) > kMaxActiveRows)
            throw InternalError("active row set exceeded the desk-scale guard");
    }
    throw InternalError("row activation did not converge");
}

void validate_model(const LpModel& model) {
    for (const auto& row : model.rows) {
        if (row.empty()) throw ValidationError("model row is empty");
        for (size_t i = 0; i < row.size(); ++i) {
            if (row[i] < 0 || row[i] >= model.num_vars)
                throw ValidationError("model row references variable out of range");
            if (i > 0 && row[i] <= row[i - 1])
                throw ValidationError("model row is not sorted/unique");
        }
    }
}

long long ceil_to_ll(const Rat& r) { return r.ceil().to_longlong(); }

} // namespace

LpModel model_from_constraints(int num_vars, const std::vector<QuartetConstraint>& constraints) {
    LpModel model;
    model.num_vars = num_vars;
    model.rows.reserve(constraints.size());
    for (const auto& c : constraints) model.rows.push_back(c.lq_edges);
    validate_model(model);
    return model;
}

LpModel build_model(const std::vector<PhyloTree>& trees) {
    auto constraints = incompatible_quartets(trees);
    return model_from_constraints(trees[0].num_edges(), constraints);
}

FractionalSolution solve_lp(const LpModel& model) {
    validate_model(model);
    FractionalSolution sol;
    sol.values.assign(model.num_vars, Rat(0));
    sol.objective = Rat(0);
    if (model.rows.empty()) return sol;

    std::vector<Rat> lb(model.num_vars, Rat(0)), ub(model.num_vars, Rat(1));
    sol.values = solve_covering<RatOps>(model.rows, lb, ub);
    for (const Rat& v : sol.values) sol.objective += v;
    if (!satisfies_all(model, sol.values))
        throw InternalError("LP solution failed the exact feasibility recheck");
    return sol;
}

FractionalSolution solve_lp_float(const LpModel& model) {
    validate_model(model);
    FractionalSolution sol;
    sol.values.assign(model.num_vars, Rat(0));
    sol.objective = Rat(0);
    if (model.rows.empty()) return sol;

    std::vector<double> lb(model.num_vars, 0.0), ub(model.num_vars, 1.0);
    std::vector<double> x = solve_covering<DoubleOps>(model.rows, lb, ub);
    for (int j = 0; j < model.num_vars; ++j) {
        double v = std::min(1.0, std::max(0.0, x[j]));
        sol.values[j] = Rat::from_double(v);
        sol.objective += sol.values[j];
    }
    return sol;
}

bool satisfies_all(const LpModel& model, const std::vector<Rat>& x) {
    if (static_cast<int>(x.size()) != model.num_vars)
        throw ValidationError("solution size does not match the model");
    const Rat one(1);
    for (const auto& row : model.rows) {
        Rat sum(0);
        for (int j : row) sum += x[j];
        if (sum < one) return false;
    }
    return true;
}

bool cut_satisfies_all(const LpModel& model, std::span<const int> cut) {
    std::vector<char> in_cut(model.num_vars, 0);
    for (int e : cut) {
        if (e < 0 || e >= model.num_vars)
            throw ValidationError("cut edge out of range: " + std::to_string(e));
        in_cut[e] = 1;
    }
    for (const auto& row : model.rows) {
        bool hit = false;
        for (int j : row)
            if (in_cut[j]) { hit = true; break; }
        if (!hit) return false;
    }
    return true;
}

namespace {

IntegralSolution solve_ilp_exhaustive(const LpModel& model) {
    if (model.num_vars > 25)
        throw ValidationError("exhaustive enumeration is limited to 25 variables");
    const int m = model.num_vars;
    std::vector<uint32_t> row_masks;
    row_masks.reserve(model.rows.size());
    for (const auto& row : model.rows) {
        uint32_t mask = 0;
        for (int j : row) mask |= 1u << j;
        row_masks.push_back(mask);
    }

    IntegralSolution sol;
    auto covers = [&](uint32_t cut) {
        for (uint32_t rm : row_masks)
            if ((rm & cut) == 0) return false;
        return true;
    };
    for (int s = 0; s <= m; ++s) {
        // Lexicographic s-subsets of {0..m-1}.
        std::vector<int> idx(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        bool more = true;
        while (more) {
            uint32_t mask = 0;
            for (int i : idx) mask |= 1u << i;
            ++sol.nodes_explored;
            if (covers(mask)) {
                sol.cut = idx;
                sol.objective = s;
                sol.optimal = true;
                sol.lower_bound = Rat(s);
                return sol;
            }
            more = false;
            for (int i = s - 1; i >= 0; --i) {
                if (idx[i] < m - (s - i)) {
                    ++idx[i];
                    for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
                    more = true;
                    break;
                }
            }
        }
    }
    throw InternalError("exhaustive enumeration found no cover (all-edges must cover)");
}

} // namespace

IntegralSolution solve_ilp_exact(const LpModel& model, long long node_budget, IlpMode mode) {
    validate_model(model);
    if (mode == IlpMode::Auto)
        mode = model.num_vars <= 20 ? IlpMode::Exhaustive : IlpMode::BranchAndBound;
    if (mode == IlpMode::Exhaustive) return solve_ilp_exhaustive(model);

    const int m = model.num_vars;
    const int q = static_cast<int>(model.rows.size());

    IntegralSolution best;
    best.cut.resize(m);
    for (int j = 0; j < m; ++j) best.cut[j] = j;
    best.objective = m;
    best.optimal = true;

    std::vector<int8_t> fix(m, -1);
    long long nodes = 0;
    bool exhausted = false;
    Rat root_bound;
    bool have_root_bound = false;

    std::vector<std::vector<int>> alive;
    alive.reserve(q);

    std::function<void()> dfs = [&]() {
        if (exhausted) return;
        if (++nodes > node_budget) {
            exhausted = true;
            return;
        }

        alive.clear();
        for (const auto& row : model.rows) {
            bool satisfied = false;
            bool has_free = false;
            for (int j : row) {
                if (fix[j] == 1) { satisfied = true; break; }
                if (fix[j] == -1) has_free = true;
            }
            if (satisfied) continue;
            if (!has_free) return;   // row is unsatisfiable here
            alive.push_back(row);
        }

        std::vector<Rat> lb(m, Rat(0)), ub(m, Rat(1));
        for (int j = 0; j < m; ++j) {
            if (fix[j] == 0) ub[j] = Rat(0);
            if (fix[j] == 1) lb[j] = Rat(1);
        }
        std::vector<Rat> x = solve_covering<RatOps>(alive, lb, ub);
        Rat obj(0);
        for (const Rat& v : x) obj += v;
        if (!have_root_bound) {
            root_bound = obj;
            have_root_bound = true;
        }
        if (ceil_to_ll(obj) >= best.objective) return;

        int branch_var = -1;
        Rat branch_score(0);
        const Rat one(1);
        for (int j = 0; j < m; ++j) {
            if (x[j].is_zero() || x[j] == one) continue;
            Rat score = x[j] < one - x[j] ? x[j] : one - x[j];
            if (branch_var < 0 || score > branch_score) {
                branch_var = j;
                branch_score = score;
            }
        }
        if (branch_var < 0) {
            // Integral and better than the incumbent.
            std::vector<int> cut;
            for (int j = 0; j < m; ++j)
                if (x[j] == one) cut.push_back(j);
            best.cut = std::move(cut);
            best.objective = static_cast<int>(best.cut.size());
            return;
        }

        fix[branch_var] = 1;
        dfs();
        fix[branch_var] = 0;
        dfs();
        fix[branch_var] = -1;
    };

    dfs();

    best.nodes_explored = nodes;
    if (exhausted) {
        best.optimal = false;
        best.lower_bound = have_root_bound ? root_bound : Rat(0);
    } else {
        best.optimal = true;
        best.lower_bound = Rat(best.objective);
    }
    return best;
}

void write_model(const LpModel& model, std::ostream& out) {
    out << "# vars=" << model.num_vars << " rows=" << model.rows.size() << "\n";
    for (const auto& row : model.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << " ";
            out << row[i];
        }
        out << " >= 1\n";
    }
}

} // namespace maf
