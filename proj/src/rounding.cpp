#include "maf/rounding.hpp"

#include <algorithm>
#include <functional>

#include "maf/errors.hpp"

namespace maf {

namespace {

struct PassResult {
    std::vector<char> cut;                               // per edge
    std::vector<Rat> final_weight;                       // w(e) at termination
    std::vector<std::pair<int, Rat>> insertion_weights;  // in cut order
};

PassResult run_pass(const PhyloTree& t1, const FractionalSolution& x, int root_taxon,
                    bool reverse_siblings) {
    if (static_cast<int>(x.values.size()) != t1.num_edges())
        throw ValidationError("fractional solution does not index the edges of T1");
    for (const Rat& v : x.values)
        if (v.sign() < 0) throw ValidationError("fractional solution has a negative value");

    RootedView rv = rooted_view(t1, root_taxon);
    std::vector<int> postorder = rv.postorder_edges;
    if (reverse_siblings) {
        // Any child-before-parent order gives the same pass; rebuild one with
        // reversed sibling traversal so tests can check that.
        postorder.clear();
        std::vector<std::pair<int, bool>> stack{{rv.root_vertex, false}};
        while (!stack.empty()) {
            auto [v, processed] = stack.back();
            stack.pop_back();
            if (processed) {
                if (rv.parent_edge[v] >= 0) postorder.push_back(rv.parent_edge[v]);
                continue;
            }
            stack.emplace_back(v, true);
            for (int e : rv.child_edges[v]) stack.emplace_back(rv.edge_child[e], false);
        }
    }

    PassResult res;
    res.cut.assign(t1.num_edges(), 0);
    res.final_weight.assign(t1.num_edges(), Rat(0));
    const Rat quarter(1, 4);
    for (int e : postorder) {
        int child = rv.edge_child[e];
        Rat acc = x.values[e];
        for (int f : rv.child_edges[child])
            if (!res.cut[f]) acc += res.final_weight[f];
        res.final_weight[e] = acc;
        if (acc >= quarter) {
            res.cut[e] = 1;
            res.insertion_weights.emplace_back(e, acc);
        }
    }
    return res;
}

} // namespace

std::vector<int> round_quarter(const PhyloTree& t1, const FractionalSolution& x, int root_taxon,
                               bool reverse_siblings) {
    PassResult res = run_pass(t1, x, root_taxon, reverse_siblings);
    std::vector<int> cut;
    for (int e = 0; e < t1.num_edges(); ++e)
        if (res.cut[e]) cut.push_back(e);
    return cut;
}

RoundingCertificate rounding_certificate(const PhyloTree& t1, const FractionalSolution& x,
                                         std::span<const int> cut, int root_taxon) {
    PassResult res = run_pass(t1, x, root_taxon, false);
    std::vector<int> replayed;
    for (int e = 0; e < t1.num_edges(); ++e)
        if (res.cut[e]) replayed.push_back(e);
    std::vector<int> given(cut.begin(), cut.end());
    std::sort(given.begin(), given.end());
    if (replayed != given)
        throw InternalError("certificate replay produced a different cut");

    RoundingCertificate cert;
    cert.cut_size = static_cast<int>(given.size());
    cert.fractional_objective = Rat(0);
    for (const Rat& v : x.values) cert.fractional_objective += v;
    cert.ratio_ok = Rat(cert.cut_size) <= Rat(4) * cert.fractional_objective;

    const Rat quarter(1, 4);
    cert.insertion_weights = res.insertion_weights;
    std::sort(cert.insertion_weights.begin(), cert.insertion_weights.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    cert.thresholds_ok = true;
    for (const auto& [e, w] : cert.insertion_weights)
        if (w < quarter) cert.thresholds_ok = false;

    cert.residuals_ok = true;
    for (int e = 0; e < t1.num_edges(); ++e)
        if (!res.cut[e] && res.final_weight[e] >= quarter) cert.residuals_ok = false;

    // Final descendant sets D(e) of the cut edges must be pairwise disjoint:
    // D(e) is e plus the edges below v_e reachable without crossing the cut.
    RootedView rv = rooted_view(t1, root_taxon);
    std::vector<int> owner(t1.num_edges(), -1);
    cert.descendant_sets_disjoint = true;
    for (int e : given) {
        std::vector<int> stack{e};
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            if (owner[f] != -1) cert.descendant_sets_disjoint = false;
            owner[f] = e;
            for (int g : rv.child_edges[rv.edge_child[f]])
                if (!res.cut[g]) stack.push_back(g);
        }
    }

    // Any two leaves left in one component of T1 - E carry path mass < 1/2.
    std::vector<int> comp(t1.num_vertices());
    for (int v = 0; v < t1.num_vertices(); ++v) comp[v] = v;
    std::vector<char> in_cut(t1.num_edges(), 0);
    for (int e : given) in_cut[e] = 1;
    std::function<int(int)> find = [&](int v) {
        while (comp[v] != v) v = comp[v] = comp[comp[v]];
        return v;
    };
    for (int e = 0; e < t1.num_edges(); ++e) {
        if (in_cut[e]) continue;
        auto [u, v] = t1.edge(e);
        comp[find(u)] = find(v);
    }
    cert.path_mass_ok = true;
    const Rat half(1, 2);
    for (int a = 0; a < t1.num_taxa() && cert.path_mass_ok; ++a) {
        for (int b = a + 1; b < t1.num_taxa(); ++b) {
            if (find(t1.leaf_vertex(a)) != find(t1.leaf_vertex(b))) continue;
            Rat mass(0);
            for (int e : spanning_path_edges(t1, a, b)) mass += x.values[e];
            if (mass >= half) {
                cert.path_mass_ok = false;
                break;
            }
        }
    }

    if (!cert.all_ok()) {
        std::string what = "rounding certificate failed:";
        if (!cert.ratio_ok) what += " ratio";
        if (!cert.thresholds_ok) what += " thresholds";
        if (!cert.residuals_ok) what += " residuals";
        if (!cert.descendant_sets_disjoint) what += " descendant-sets";
        if (!cert.path_mass_ok) what += " path-mass";
        throw InternalError(what);
    }
    return cert;
}

} // namespace maf
