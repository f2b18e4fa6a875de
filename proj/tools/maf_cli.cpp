#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "maf/errors.hpp"
#include "maf/forest.hpp"
#include "maf/gap_study.hpp"
#include "maf/instances.hpp"
#include "maf/report.hpp"
#include "maf/rounding.hpp"

namespace {

constexpr int kExitReject = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitBudget = 4;

double seconds_since(std::chrono::steady_clock::time_point& mark) {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - mark).count();
    mark = now;
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw maf::ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw maf::ValidationError("cannot write '" + path + "'");
    out << content;
}

std::vector<maf::PhyloTree> load_instance(const std::string& path) {
    std::vector<maf::PhyloTree> trees = maf::parse_newick(read_file(path));
    if (trees.size() < 2)
        throw maf::ValidationError("'" + path + "' holds " + std::to_string(trees.size()) +
                                   " tree(s); need at least 2");
    return trees;
}

int resolve_root(const maf::PhyloTree& t1, const std::string& root_label) {
    if (root_label.empty()) return 0;
    int id = t1.taxon_id(root_label);
    if (id < 0) throw maf::ValidationError("--root-leaf '" + root_label + "' is not a taxon");
    return id;
}

void emit(const maf::RunReport& report, const maf::PhyloTree& t1, const std::string& json_path) {
    std::cout << maf::report_to_text(report, t1);
    if (!json_path.empty()) write_file(json_path, maf::report_to_json(report, t1).dump(2) + "\n");
}

struct ApproxArgs {
    std::string input, json_path, root_label, dump_constraints, dump_model;
    bool float_lp = false;
};

int cmd_approx(const ApproxArgs& args) {
    auto mark = std::chrono::steady_clock::now();
    maf::RunReport report;
    report.command = "approx";

    std::vector<maf::PhyloTree> trees = load_instance(args.input);
    const maf::PhyloTree& t1 = trees[0];
    report.n = t1.num_taxa();
    report.t = static_cast<int>(trees.size());
    report.root_taxon = resolve_root(t1, args.root_label);
    report.timings.parse_s = seconds_since(mark);

    std::vector<maf::QuartetConstraint> constraints = maf::incompatible_quartets(trees);
    maf::LpModel model = maf::model_from_constraints(t1.num_edges(), constraints);
    report.num_constraints = static_cast<int>(model.rows.size());
    if (!args.dump_constraints.empty()) {
        std::ostringstream ss;
        maf::dump_constraints(constraints, t1, ss);
        write_file(args.dump_constraints, ss.str());
    }
    if (!args.dump_model.empty()) {
        std::ostringstream ss;
        maf::write_model(model, ss);
        write_file(args.dump_model, ss.str());
    }
    report.timings.model_s = seconds_since(mark);

    maf::FractionalSolution lp = args.float_lp ? maf::solve_lp_float(model) : maf::solve_lp(model);
    report.lp_objective = lp.objective;
    report.lp_exact = !args.float_lp;
    report.timings.solve_s = seconds_since(mark);

    report.cut = maf::round_quarter(t1, lp, report.root_taxon);
    if (!args.float_lp)
        report.certificate = maf::rounding_certificate(t1, lp, report.cut, report.root_taxon);
    report.timings.round_s = seconds_since(mark);

    report.forest = maf::partition_from_cut(t1, report.cut);
    maf::AfVerdict verdict = maf::verify_af(trees, report.forest);
    if (!verdict.accepted)
        throw maf::InternalError("emitted forest failed verification: " + verdict.reason);
    report.verified = true;
    if (!args.float_lp && !maf::cut_satisfies_all(model, report.cut))
        throw maf::InternalError("rounded cut violates a model constraint");
    if (auto tbr = maf::tbr_estimate(report.forest.k(), report.t)) {
        report.tbr = tbr;
        report.tbr_is_exact = false;
    }
    report.timings.verify_s = seconds_since(mark);

    emit(report, t1, args.json_path);
    return 0;
}

struct ExactArgs {
    std::string input, json_path;
    long long budget = 1000000;
};

int cmd_exact(const ExactArgs& args) {
    auto mark = std::chrono::steady_clock::now();
    maf::RunReport report;
    report.command = "exact";

    std::vector<maf::PhyloTree> trees = load_instance(args.input);
    const maf::PhyloTree& t1 = trees[0];
    report.n = t1.num_taxa();
    report.t = static_cast<int>(trees.size());
    report.timings.parse_s = seconds_since(mark);

    maf::LpModel model = maf::build_model(trees);
    report.num_constraints = static_cast<int>(model.rows.size());
    report.timings.model_s = seconds_since(mark);

    maf::FractionalSolution lp = maf::solve_lp(model);
    report.lp_objective = lp.objective;
    maf::IntegralSolution ilp = maf::solve_ilp_exact(model, args.budget);
    report.ilp_lower_bound = ilp.lower_bound;
    report.optimal = ilp.optimal;
    report.nodes_explored = ilp.nodes_explored;
    report.cut = ilp.cut;
    report.timings.solve_s = seconds_since(mark);

    report.forest = maf::partition_from_cut(t1, report.cut);
    maf::AfVerdict verdict = maf::verify_af(trees, report.forest);
    if (!verdict.accepted)
        throw maf::InternalError("emitted forest failed verification: " + verdict.reason);
    report.verified = true;
    if (ilp.optimal && report.n <= 8) {
        maf::MafResult oracle = maf::brute_force_maf(trees);
        if (static_cast<int>(oracle.cut.size()) != ilp.objective)
            throw maf::InternalError("exact solver disagrees with the brute-force oracle");
    }
    if (auto tbr = maf::tbr_estimate(report.forest.k(), report.t)) {
        report.tbr = tbr;
        report.tbr_is_exact = ilp.optimal;
    }
    report.timings.verify_s = seconds_since(mark);

    emit(report, t1, args.json_path);
    return ilp.optimal ? 0 : kExitBudget;
}

int cmd_verify(const std::string& input, const std::string& forest_path) {
    std::vector<maf::PhyloTree> trees = load_instance(input);
    maf::ordered_json j = maf::ordered_json::parse(read_file(forest_path), nullptr, true);
    maf::AgreementForest forest = maf::forest_from_json(j, trees[0]);
    maf::AfVerdict verdict = maf::verify_af(trees, forest);
    if (verdict.accepted) {
        std::cout << "ACCEPT: agreement forest with k=" << forest.k() << "\n";
        return 0;
    }
    std::cout << "REJECT: " << verdict.reason << "\n";
    return kExitReject;
}

struct GenerateArgs {
    int grid_ell = 0;
    std::vector<int> random_nt;
    uint64_t seed = 1;
    std::string out;
};

int cmd_generate(const GenerateArgs& args) {
    std::ostringstream ss;
    if (args.grid_ell > 0) {
        auto [t1, t2] = maf::generate_caterpillar_grid(args.grid_ell);
        ss << "# caterpillar grid, ell=" << args.grid_ell << "\n";
        ss << maf::write_newick(t1) << "\n" << maf::write_newick(t2) << "\n";
    } else {
        maf::RandomInstanceSpec spec;
        spec.n = args.random_nt[0];
        spec.t = args.random_nt[1];
        spec.seed = args.seed;
        ss << "# random instance, n=" << spec.n << " t=" << spec.t << " seed=" << spec.seed
           << "\n";
        for (const maf::PhyloTree& tree : maf::random_instance(spec))
            ss << maf::write_newick(tree) << "\n";
    }
    if (args.out.empty())
        std::cout << ss.str();
    else
        write_file(args.out, ss.str());
    return 0;
}

struct GapArgs {
    int ell_min = 2, ell_max = 6;
    long long max_constraints = 200000;
    std::string out;
};

int cmd_gap_study(const GapArgs& args) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<maf::GapStudyRow> rows =
        maf::run_gap_study(args.ell_min, args.ell_max, args.max_constraints);
    std::ostringstream ss;
    maf::write_gap_csv(rows, ss);
    if (args.out.empty())
        std::cout << ss.str();
    else
        write_file(args.out, ss.str());
    double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "gap-study: ell " << args.ell_min << ".." << args.ell_max << " in " << took
              << "s\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum agreement forests of unrooted binary trees via LP rounding"};
    app.require_subcommand(1);

    ApproxArgs approx_args;
    CLI::App* approx = app.add_subcommand(
        "approx", "4-approximate MAF: quartet model, exact LP, threshold rounding");
    approx->add_option("input", approx_args.input, "Newick file, one tree per line")->required();
    approx->add_option("--json", approx_args.json_path, "write the machine report here");
    approx->add_option("--root-leaf", approx_args.root_label,
                       "rounding root (default: smallest label)");
    approx->add_flag("--float-lp", approx_args.float_lp,
                     "double-precision LP (speed comparisons only; uncertified)");
    approx->add_option("--dump-constraints", approx_args.dump_constraints,
                       "write the incompatible quartets here");
    approx->add_option("--dump-model", approx_args.dump_model, "write the model rows here");

    ExactArgs exact_args;
    CLI::App* exact = app.add_subcommand("exact", "exact MAF via the integral model");
    exact->add_option("input", exact_args.input, "Newick file, one tree per line")->required();
    exact->add_option("--json", exact_args.json_path, "write the machine report here");
    exact->add_option("--budget", exact_args.budget, "branch-and-bound node budget")
        ->default_val(1000000);

    std::string verify_input, verify_forest;
    CLI::App* verify = app.add_subcommand("verify", "check a forest JSON against an instance");
    verify->add_option("input", verify_input, "Newick file")->required();
    verify->add_option("forest", verify_forest, "forest JSON file")->required();

    GenerateArgs gen_args;
    CLI::App* generate = app.add_subcommand("generate", "write instance files");
    CLI::Option* gen_grid =
        generate->add_option("--grid", gen_args.grid_ell, "caterpillar grid with ell^2 leaves");
    CLI::Option* gen_random =
        generate
            ->add_option("--random", gen_args.random_nt, "random instance: N_TAXA N_TREES")
            ->expected(2);
    generate->add_option("--seed", gen_args.seed, "random seed")->default_val(1);
    generate->add_option("-o,--out", gen_args.out, "output path (default: stdout)");
    gen_grid->excludes(gen_random);

    GapArgs gap_args;
    CLI::App* gap = app.add_subcommand("gap-study", "integrality-gap sweep over grid sizes");
    gap->add_option("--ell-min", gap_args.ell_min, "smallest grid")->default_val(2);
    gap->add_option("--ell-max", gap_args.ell_max, "largest grid")->default_val(6);
    gap->add_option("--max-constraints", gap_args.max_constraints,
                    "skip grids whose model exceeds this many rows")
        ->default_val(200000);
    gap->add_option("-o,--out", gap_args.out, "CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*approx) return cmd_approx(approx_args);
        if (*exact) return cmd_exact(exact_args);
        if (*verify) return cmd_verify(verify_input, verify_forest);
        if (*generate) {
            if (gen_args.grid_ell <= 0 && gen_args.random_nt.size() != 2) {
                std::cerr << "error: generate needs --grid or --random\n";
                return kExitInput;
            }
            return cmd_generate(gen_args);
        }
        if (*gap) return cmd_gap_study(gap_args);
    } catch (const maf::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const maf::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const maf::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
