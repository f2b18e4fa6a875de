// Acceptance suite: one line per criterion, nonzero exit if any fails.
// argv[1] must point at the maf CLI binary; criterion 9 drives it as a
// subprocess to check byte-identical machine output across runs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "maf/errors.hpp"
#include "maf/forest.hpp"
#include "maf/gap_study.hpp"
#include "maf/instances.hpp"
#include "maf/rounding.hpp"

using namespace maf;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what, double seconds) {
    std::printf("criterion %2d: %s — %s (%.1fs)\n", criterion, ok ? "PASS" : "FAIL",
                what.c_str(), seconds);
    if (!ok) ++failures;
}

double now_s() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct XorShift {
    uint64_t s;
    explicit XorShift(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1. On 500 random (instance, random cut) pairs with n <= 10, t in {2,3},
//    integral feasibility of the cut must equal forest verification, with
//    exact arithmetic, in under 5 minutes.
void criterion_1() {
    double t0 = now_s();
    int agree = 0;
    const int samples = 500;
    try {
        for (int i = 0; i < samples; ++i) {
            int n = 4 + i % 7;
            int t = 2 + i % 2;
            auto trees = random_instance({n, t, 1000 + static_cast<uint64_t>(i)});
            LpModel model = build_model(trees);
            XorShift rng(31 + static_cast<uint64_t>(i));
            std::vector<int> cut;
            for (int e = 0; e < trees[0].num_edges(); ++e)
                if (rng.next() & 1) cut.push_back(e);
            verify_cut_feasibility_equivalence(trees, cut, model);   // throws on disagreement
            ++agree;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "  criterion 1 stopped: %s\n", e.what());
    }
    double took = now_s() - t0;
    report(1, agree == samples && took < 300.0,
           "cut feasibility == forest verification on " + std::to_string(agree) + "/" +
               std::to_string(samples) + " random cuts",
           took);
}

// 2+3. On 200 random instances with n <= 12: the rounded cut of the exact LP
//      optimum satisfies |E| <= 4*objective exactly, and satisfies every
//      quartet constraint.  Zero violations allowed for either.
void criteria_2_3() {
    double t0 = now_s();
    const int samples = 200;
    int ratio_ok = 0, feasible_ok = 0;
    try {
        for (int i = 0; i < samples; ++i) {
            int n = 4 + i % 9;
            int t = 2 + i % 2;
            auto trees = random_instance({n, t, 5000 + static_cast<uint64_t>(i)});
            LpModel model = build_model(trees);
            FractionalSolution lp = solve_lp(model);
            std::vector<int> cut = round_quarter(trees[0], lp);
            if (Rat(static_cast<long long>(cut.size())) <= Rat(4) * lp.objective) ++ratio_ok;
            if (cut_satisfies_all(model, cut)) ++feasible_ok;
            rounding_certificate(trees[0], lp, cut);   // throws if anything is off
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "  criteria 2/3 stopped: %s\n", e.what());
    }
    double took = now_s() - t0;
    report(2, ratio_ok == samples,
           "|rounded cut| <= 4*lp objective exactly on " + std::to_string(ratio_ok) + "/" +
               std::to_string(samples) + " instances",
           took);
    report(3, feasible_ok == samples,
           "rounded cut satisfies every constraint on " + std::to_string(feasible_ok) + "/" +
               std::to_string(samples) + " instances",
           took);
}

// 4+5. On 100+ random instances with n <= 8: the full approximation pipeline
//      stays within 4x of the oracle in components and cut size, and the
//      exact solver's objective equals the oracle cut size.
void criteria_4_5() {
    double t0 = now_s();
    const int samples = 120;
    int approx_ok = 0, exact_ok = 0;
    try {
        for (int i = 0; i < samples; ++i) {
            int n = 4 + i % 5;
            int t = 2 + (i / 5) % 2;
            auto trees = random_instance({n, t, 9000 + static_cast<uint64_t>(i)});
            LpModel model = build_model(trees);

            FractionalSolution lp = solve_lp(model);
            std::vector<int> cut = round_quarter(trees[0], lp);
            AgreementForest approx = partition_from_cut(trees[0], cut);
            if (!verify_af(trees, approx).accepted)
                throw InternalError("approximation emitted a non-forest");

            MafResult oracle = brute_force_maf(trees);
            if (approx.k() <= 4 * oracle.forest.k() && cut.size() <= 4 * oracle.cut.size())
                ++approx_ok;

            IntegralSolution ilp = solve_ilp_exact(model);
            if (ilp.optimal && ilp.objective == static_cast<int>(oracle.cut.size())) ++exact_ok;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "  criteria 4/5 stopped: %s\n", e.what());
    }
    double took = now_s() - t0;
    report(4, approx_ok == samples,
           "approximation within 4x of the oracle on " + std::to_string(approx_ok) + "/" +
               std::to_string(samples) + " instances",
           took);
    report(5, exact_ok == samples,
           "exact solver equals the oracle on " + std::to_string(exact_ok) + "/" +
               std::to_string(samples) + " instances",
           took);
}

// 6. The pendant-quarter solution is feasible with objective exactly n/4 on
//    random instances and on every grid up to ell=6.
void criterion_6() {
    double t0 = now_s();
    bool ok = true;
    try {
        for (int i = 0; i < 60 && ok; ++i) {
            int n = 4 + i % 9;
            auto trees = random_instance({n, 2 + i % 2, 40000 + static_cast<uint64_t>(i)});
            LpModel model = build_model(trees);
            FractionalSolution x = pendant_quarter_solution(trees[0]);
            ok = x.objective == Rat(n, 4) && satisfies_all(model, x.values);
        }
        for (int ell = 2; ell <= 6 && ok; ++ell) {
            auto [t1, t2] = generate_caterpillar_grid(ell);
            std::vector<PhyloTree> trees{t1, t2};
            LpModel model = build_model(trees);
            FractionalSolution x = pendant_quarter_solution(trees[0]);
            ok = x.objective == Rat(ell * ell, 4) && satisfies_all(model, x.values);
        }
    } catch (const std::exception& e) {
        ok = false;
        std::fprintf(stderr, "  criterion 6 stopped: %s\n", e.what());
    }
    report(6, ok, "pendant-quarter solution feasible with objective n/4 (grids 2..6 included)",
           now_s() - t0);
}

// 7. The oracle respects the grid counting bound at oracle scale.
void criterion_7() {
    double t0 = now_s();
    bool ok = false;
    try {
        auto g2 = generate_caterpillar_grid(2);
        std::vector<PhyloTree> p2{g2.first, g2.second};
        auto g3 = generate_caterpillar_grid(3);
        std::vector<PhyloTree> p3{g3.first, g3.second};
        int k2 = brute_force_maf(p2).forest.k();
        int k3 = brute_force_maf(p3).forest.k();
        ok = k2 == 2 && k3 >= grid_af_component_lower_bound(3);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "  criterion 7 stopped: %s\n", e.what());
    }
    report(7, ok, "oracle: 2-grid k*=2, 3-grid k* >= 5", now_s() - t0);
}

// 8. Gap study over ell=2..6 in under 10 minutes: measured lp objective at
//    most ell^2/4, certified gap exactly 4(ell^2-2ell+1)/ell^2, strictly
//    increasing, at least 2.77 at ell=6.
void criterion_8() {
    double t0 = now_s();
    bool ok = true;
    std::string note = "gap study ell=2..6";
    try {
        std::vector<GapStudyRow> rows = run_gap_study(2, 6);
        ok = rows.size() == 5;
        Rat prev(-1);
        for (const auto& row : rows) {
            long long n = static_cast<long long>(row.ell) * row.ell;
            if (row.skipped || !(row.lp_objective <= Rat(n, 4))) ok = false;
            Rat expected(4 * (n - 2 * row.ell + 1), n);
            if (row.certified_gap != expected) ok = false;
            if (!(row.certified_gap > prev)) ok = false;
            prev = row.certified_gap;
        }
        if (!(prev >= Rat(277, 100))) ok = false;
    } catch (const std::exception& e) {
        ok = false;
        note = e.what();
    }
    double took = now_s() - t0;
    report(8, ok && took < 600.0, note + " (lp <= n/4, analytic gap column, increasing, >= 2.77)",
           took);
}

// 9. Byte-identical machine output across repeated CLI runs.
void criterion_9(const std::string& cli) {
    double t0 = now_s();
    bool ok = true;
    std::string note = "byte-identical JSON/CSV across runs of every command";
    std::string dir = "acceptance_tmp";
    if (std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) != 0) ok = false;
    auto run = [&](const std::string& args) {
        std::string cmd = cli + " " + args + " >/dev/null 2>/dev/null";
        return std::system(cmd.c_str()) == 0;
    };
    try {
        ok = ok && run("generate --grid 3 -o " + dir + "/g3.nwk");
        ok = ok && run("generate --grid 3 -o " + dir + "/g3b.nwk");
        ok = ok && run("generate --random 8 2 --seed 5 -o " + dir + "/r.nwk");
        ok = ok && run("generate --random 8 2 --seed 5 -o " + dir + "/rb.nwk");
        ok = ok && run("approx " + dir + "/g3.nwk --json " + dir + "/a1.json");
        ok = ok && run("approx " + dir + "/g3.nwk --json " + dir + "/a2.json");
        ok = ok && run("exact " + dir + "/g3.nwk --json " + dir + "/e1.json");
        ok = ok && run("exact " + dir + "/g3.nwk --json " + dir + "/e2.json");
        ok = ok && run("gap-study --ell-min 2 --ell-max 4 -o " + dir + "/c1.csv");
        ok = ok && run("gap-study --ell-min 2 --ell-max 4 -o " + dir + "/c2.csv");
        if (ok) {
            ok = read_file(dir + "/g3.nwk") == read_file(dir + "/g3b.nwk") &&
                 read_file(dir + "/r.nwk") == read_file(dir + "/rb.nwk") &&
                 read_file(dir + "/a1.json") == read_file(dir + "/a2.json") &&
                 read_file(dir + "/e1.json") == read_file(dir + "/e2.json") &&
                 read_file(dir + "/c1.csv") == read_file(dir + "/c2.csv") &&
                 !read_file(dir + "/a1.json").empty();
        } else {
            note = "a CLI invocation failed";
        }
    } catch (const std::exception& e) {
        ok = false;
        note = e.what();
    }
    (void)!std::system(("rm -rf " + dir).c_str());
    report(9, ok, note, now_s() - t0);
}

// 10. Leaf-respecting isomorphism coincides with quartet emptiness on 200
//     random pairs with n <= 10 (a quarter of them identical by seed).
void criterion_10() {
    double t0 = now_s();
    const int samples = 200;
    int agree = 0;
    try {
        for (int i = 0; i < samples; ++i) {
            int n = 4 + i % 7;
            std::vector<std::string> labels = instance_labels(n);
            uint64_t s1 = 70000 + static_cast<uint64_t>(i);
            uint64_t s2 = (i % 4 == 0) ? s1 : s1 + 100000;
            std::vector<PhyloTree> trees;
            trees.push_back(random_tree(labels, s1));
            trees.push_back(random_tree(labels, s2));
            bool iso = is_isomorphic(trees[0], trees[1]);
            bool empty = incompatible_quartets(trees).empty();
            if (iso == empty) ++agree;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "  criterion 10 stopped: %s\n", e.what());
    }
    report(10, agree == samples,
           "isomorphism == quartet emptiness on " + std::to_string(agree) + "/" +
               std::to_string(samples) + " pairs",
           now_s() - t0);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-maf-cli>\n");
        return 2;
    }
    criterion_1();
    criteria_2_3();
    criteria_4_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(argv[1]);
    criterion_10();
    std::printf("%s\n", failures == 0 ? "all criteria passed" : "SOME CRITERIA FAILED");
    return failures == 0 ? 0 : 1;
}
