#include "maf/report.hpp"

#include <sstream>

#include "maf/errors.hpp"

namespace maf {

ordered_json rat_to_json(const Rat& r) {
    return ordered_json{{"num", r.num().to_string()},
                        {"den", r.den().to_string()},
                        {"decimal", r.to_decimal_string()}};
}

ordered_json forest_to_json(const AgreementForest& forest, const PhyloTree& t1,
                            std::span<const int> cut, bool exact) {
    ordered_json components = ordered_json::array();
    for (const auto& block : forest.components) {
        ordered_json labels = ordered_json::array();
        for (int x : block) labels.push_back(t1.label(x));
        components.push_back(std::move(labels));
    }
    ordered_json j;
    j["components"] = std::move(components);
    j["k"] = forest.k();
    j["cut_edges"] = std::vector<int>(cut.begin(), cut.end());
    j["exact"] = exact;
    return j;
}

AgreementForest forest_from_json(const ordered_json& j, const PhyloTree& t1) {
    if (!j.contains("components") || !j["components"].is_array())
        throw ValidationError("forest JSON lacks a components array");
    std::vector<std::vector<int>> blocks;
    for (const auto& jb : j["components"]) {
        std::vector<int> block;
        for (const auto& jl : jb) {
            int id = t1.taxon_id(jl.get<std::string>());
            if (id < 0)
                throw ValidationError("forest JSON names unknown taxon '" +
                                      jl.get<std::string>() + "'");
            block.push_back(id);
        }
        std::sort(block.begin(), block.end());
        blocks.push_back(std::move(block));
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    AgreementForest f;
    f.components = std::move(blocks);
    return f;
}

ordered_json report_to_json(const RunReport& report, const PhyloTree& t1) {
    ordered_json j;
    j["command"] = report.command;
    j["n"] = report.n;
    j["t"] = report.t;
    j["constraints"] = report.num_constraints;
    j["root_leaf"] = t1.label(report.root_taxon);
    j["lp"] = ordered_json{{"objective", rat_to_json(report.lp_objective)},
                           {"exact", report.lp_exact}};
    if (report.ilp_lower_bound) {
        j["ilp"] = ordered_json{{"lower_bound", rat_to_json(*report.ilp_lower_bound)},
                                {"optimal", report.optimal},
                                {"nodes_explored", report.nodes_explored}};
    }
    j["cut_edges"] = report.cut;
    j["cut_size"] = static_cast<int>(report.cut.size());
    j["forest"] = forest_to_json(report.forest, t1, report.cut,
                                 report.command == "exact" && report.optimal);
    j["verified"] = report.verified;
    if (report.certificate) {
        const auto& c = *report.certificate;
        ordered_json weights = ordered_json::array();
        std::vector<int> cert_cut;
        for (const auto& [e, w] : c.insertion_weights) {
            weights.push_back(ordered_json{{"edge", e}, {"w", rat_to_json(w)}});
            cert_cut.push_back(e);
        }
        j["certificate"] = ordered_json{
            {"cut_edges", cert_cut},
            {"cut_size", c.cut_size},
            {"lp_objective", rat_to_json(c.fractional_objective)},
            {"ratio_bound_ok", c.ratio_ok},
            {"per_edge_w", std::move(weights)},
            {"thresholds_ok", c.thresholds_ok},
            {"residuals_ok", c.residuals_ok},
            {"descendant_sets_disjoint", c.descendant_sets_disjoint},
            {"path_mass_ok", c.path_mass_ok},
        };
    }
    if (report.tbr)
        j["tbr"] = ordered_json{{"value", *report.tbr},
                                {"kind", report.tbr_is_exact ? "distance" : "upper_bound"}};
    return j;
}

std::string report_to_text(const RunReport& report, const PhyloTree& t1) {
    std::ostringstream out;
    out << report.command << ": n=" << report.n << " t=" << report.t
        << " constraints=" << report.num_constraints << "\n";
    out << "lp objective: " << report.lp_objective.to_fraction_string() << " ("
        << report.lp_objective.to_decimal_string() << ")"
        << (report.lp_exact ? "" : " [floating-point, not certified]") << "\n";
    if (report.ilp_lower_bound) {
        out << "ilp: " << (report.optimal ? "optimal" : "budget exhausted, incumbent")
            << ", lower bound " << report.ilp_lower_bound->to_fraction_string() << ", "
            << report.nodes_explored << " nodes\n";
    }
    out << "cut (" << report.cut.size() << " edges):";
    for (int e : report.cut) out << " " << e;
    out << "\n";
    out << "forest: k=" << report.forest.k() << "\n";
    for (const auto& block : report.forest.components) {
        out << "  {";
        for (size_t i = 0; i < block.size(); ++i) {
            if (i) out << ",";
            out << t1.label(block[i]);
        }
        out << "}\n";
    }
    out << "verified: " << (report.verified ? "yes" : "NO") << "\n";
    if (report.certificate) {
        out << "certificate: |E| = " << report.certificate->cut_size
            << " <= 4*objective = " << (Rat(4) * report.certificate->fractional_objective)
                   .to_fraction_string()
            << (report.certificate->all_ok() ? " (all checks passed)" : " (FAILED)") << "\n";
    }
    if (report.tbr)
        out << (report.tbr_is_exact ? "TBR distance: " : "TBR upper bound (4-approx): ")
            << *report.tbr << "\n";
    out << "timings: parse " << report.timings.parse_s << "s, model " << report.timings.model_s
        << "s, solve " << report.timings.solve_s << "s, round " << report.timings.round_s
        << "s, verify " << report.timings.verify_s << "s\n";
    return out.str();
}

} // namespace maf
