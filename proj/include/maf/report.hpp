#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "maf/forest.hpp"
#include "maf/rounding.hpp"

namespace maf {

using ordered_json = nlohmann::ordered_json;

struct PhaseTimings {
    double parse_s = 0;
    double model_s = 0;
    double solve_s = 0;
    double round_s = 0;
    double verify_s = 0;
};

// Everything a pipeline run produces.  JSON output deliberately excludes the
// timings so identical runs are byte-identical; the text summary carries
// them.
struct RunReport {
    std::string command;           // "approx" or "exact"
    int n = 0;
    int t = 0;
    int num_constraints = 0;
    int root_taxon = 0;

    Rat lp_objective;
    bool lp_exact = true;          // false under --float-lp

    std::optional<Rat> ilp_lower_bound;   // exact command
    bool optimal = true;
    long long nodes_explored = 0;

    std::vector<int> cut;
    AgreementForest forest;
    bool verified = false;
    std::optional<RoundingCertificate> certificate;

    std::optional<int> tbr;        // only for t == 2
    bool tbr_is_exact = false;     // distance vs 4-approx upper bound

    PhaseTimings timings;
};

ordered_json rat_to_json(const Rat& r);
ordered_json report_to_json(const RunReport& report, const PhyloTree& t1);
std::string report_to_text(const RunReport& report, const PhyloTree& t1);

// {"components": [[labels]], "k": ..., "cut_edges": [...], "exact": ...}
ordered_json forest_to_json(const AgreementForest& forest, const PhyloTree& t1,
                            std::span<const int> cut, bool exact);
AgreementForest forest_from_json(const ordered_json& j, const PhyloTree& t1);

} // namespace maf
