#include "maf/instances.hpp"

#include <algorithm>
#include <random>

#include "maf/errors.hpp"

namespace maf {

namespace {

std::string grid_label(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

PhyloTree caterpillar(const std::vector<std::string>& leaf_order) {
    const int n = static_cast<int>(leaf_order.size());
    TreeBuilder b;
    std::vector<int> leaves;
    leaves.reserve(n);
    for (const auto& label : leaf_order) leaves.push_back(b.add_leaf(label));
    if (n == 1) return b.build();
    if (n == 2) {
        b.add_edge(leaves[0], leaves[1]);
        return b.build();
    }
    std::vector<int> spine;
    for (int i = 0; i < n - 2; ++i) spine.push_back(b.add_internal());
    for (int i = 0; i + 1 < n - 2; ++i) b.add_edge(spine[i], spine[i + 1]);
    b.add_edge(spine.front(), leaves[0]);
    b.add_edge(spine.front(), leaves[1]);
    for (int p = 2; p < n - 1; ++p) b.add_edge(spine[p - 1], leaves[p]);
    b.add_edge(spine.back(), leaves[n - 1]);
    return b.build();
}

std::vector<std::string> grid_leaf_order(int ell, GridRole role) {
    std::vector<std::string> order;
    order.reserve(static_cast<size_t>(ell) * ell);
    for (int a = 1; a <= ell; ++a)
        for (int b = 1; b <= ell; ++b)
            order.push_back(role == GridRole::RowMajor ? grid_label(a, b) : grid_label(b, a));
    return order;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::pair<PhyloTree, PhyloTree> generate_caterpillar_grid(int ell) {
    if (ell < 2) throw ValidationError("grid parameter must be at least 2");
    return {caterpillar(grid_leaf_order(ell, GridRole::RowMajor)),
            caterpillar(grid_leaf_order(ell, GridRole::ColMajor))};
}

std::vector<int> separating_edges(const PhyloTree& tree, GridRole role, int ell) {
    if (ell < 2) throw ValidationError("grid parameter must be at least 2");
    const int n = ell * ell;
    if (tree.num_taxa() != n)
        throw ValidationError("tree does not have " + std::to_string(n) + " leaves");
    std::vector<std::string> order = grid_leaf_order(ell, role);
    PhyloTree expected = caterpillar(order);
    if (!tree.same_taxa(expected) || !is_isomorphic(tree, expected))
        throw ValidationError("tree is not the expected grid caterpillar");

    // Between consecutive blocks the attachment vertices are adjacent, so the
    // path between the block-boundary leaves is pendant + spine + pendant.
    std::vector<int> result;
    for (int k = 1; k < ell; ++k) {
        int last_of_block = tree.taxon_id(order[static_cast<size_t>(k) * ell - 1]);
        int first_of_next = tree.taxon_id(order[static_cast<size_t>(k) * ell]);
        std::vector<int> path = spanning_path_edges(tree, last_of_block, first_of_next);
        std::erase(path, tree.pendant_edge(last_of_block));
        std::erase(path, tree.pendant_edge(first_of_next));
        if (path.size() != 1)
            throw ValidationError("tree is not the expected grid caterpillar");
        result.push_back(path[0]);
    }
    std::sort(result.begin(), result.end());
    return result;
}

FractionalSolution pendant_quarter_solution(const PhyloTree& t1) {
    FractionalSolution sol;
    sol.values.assign(t1.num_edges(), Rat(0));
    const Rat quarter(1, 4);
    for (int x = 0; x < t1.num_taxa(); ++x) {
        if (t1.num_edges() == 0) break;
        sol.values[t1.pendant_edge(x)] = quarter;
    }
    sol.objective = Rat(0);
    for (const Rat& v : sol.values) sol.objective += v;
    return sol;
}

long long grid_af_component_lower_bound(int ell) {
    if (ell < 2) throw ValidationError("grid parameter must be at least 2");
    return static_cast<long long>(ell) * ell - 2LL * ell + 2;
}

std::vector<std::string> instance_labels(int n) {
    int width = 1;
    for (int v = n; v >= 10; v /= 10) ++width;
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 1; i <= n; ++i) {
        std::string digits = std::to_string(i);
        labels.push_back("t" + std::string(width - digits.size(), '0') + digits);
    }
    return labels;
}

uint64_t instance_tree_seed(uint64_t seed, int index) {
    return splitmix64(seed + static_cast<uint64_t>(index) + 1);
}

PhyloTree random_tree(const std::vector<std::string>& labels, uint64_t seed) {
    const int n = static_cast<int>(labels.size());
    if (n < 1) throw ValidationError("random tree needs at least one label");
    TreeBuilder b;
    std::vector<int> leaves;
    for (const auto& label : labels) leaves.push_back(b.add_leaf(label));
    if (n == 1) return b.build();

    // Sequential insertion into a uniformly chosen edge: uniform over
    // leaf-labelled binary topologies.  Edge choice is rng() % count, which
    // is deterministic everywhere (the tiny modulo bias is irrelevant here).
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    edges.emplace_back(leaves[0], leaves[1]);
    for (int k = 2; k < n; ++k) {
        size_t pick = static_cast<size_t>(rng() % edges.size());
        auto [u, v] = edges[pick];
        int mid = b.add_internal();
        edges[pick] = {u, mid};
        edges.emplace_back(mid, v);
        edges.emplace_back(mid, leaves[k]);
    }
    for (auto [u, v] : edges) b.add_edge(u, v);
    return b.build();
}

std::vector<PhyloTree> random_instance(const RandomInstanceSpec& spec) {
    if (spec.n < 4) throw ValidationError("random instance needs n >= 4");
    if (spec.t < 2) throw ValidationError("random instance needs t >= 2");
    std::vector<std::string> labels = instance_labels(spec.n);
    std::vector<PhyloTree> trees;
    trees.reserve(spec.t);
    for (int i = 0; i < spec.t; ++i)
        trees.push_back(random_tree(labels, instance_tree_seed(spec.seed, i)));
    return trees;
}

} // namespace maf
