#include "maf/phylo.hpp"

#include <algorithm>
#include <map>

#include "maf/errors.hpp"

namespace maf {

int PhyloTree::taxon_id(std::string_view label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return -1;
    return static_cast<int>(it - labels_.begin());
}

int PhyloTree::pendant_edge(int taxon) const {
    if (taxon < 0 || taxon >= num_taxa())
        throw ValidationError("taxon id out of range: " + std::to_string(taxon));
    const auto& nb = adj_[leaf_vertex_[taxon]];
    if (nb.empty())
        throw ValidationError("single-vertex tree has no pendant edge");
    return nb[0].second;
}

int TreeBuilder::add_leaf(std::string label) {
    if (label.empty()) throw ValidationError("empty leaf label");
    vertex_label_.push_back(std::move(label));
    return static_cast<int>(vertex_label_.size()) - 1;
}

int TreeBuilder::add_internal() {
    vertex_label_.emplace_back();
    return static_cast<int>(vertex_label_.size()) - 1;
}

void TreeBuilder::add_edge(int u, int v) { edges_.emplace_back(u, v); }

PhyloTree TreeBuilder::build() {
    const int nv = static_cast<int>(vertex_label_.size());
    if (nv == 0) throw ValidationError("tree has no vertices");

    PhyloTree t;

    // Taxon ids: labels sorted, bijective.
    std::map<std::string, int> label_to_vertex;
    for (int v = 0; v < nv; ++v) {
        if (vertex_label_[v].empty()) continue;
        if (!label_to_vertex.emplace(vertex_label_[v], v).second)
            throw ValidationError("duplicate leaf label '" + vertex_label_[v] + "'");
    }
    for (auto& [label, v] : label_to_vertex) {
        t.labels_.push_back(label);
        t.leaf_vertex_.push_back(v);
    }
    const int n = static_cast<int>(t.labels_.size());
    if (n == 0) throw ValidationError("tree has no labelled leaves");

    t.vertex_taxon_.assign(nv, -1);
    for (int x = 0; x < n; ++x) t.vertex_taxon_[t.leaf_vertex_[x]] = x;

    if (static_cast<int>(edges_.size()) != nv - 1)
        throw ValidationError("tree is not acyclic/connected: " + std::to_string(edges_.size()) +
                              " edges on " + std::to_string(nv) + " vertices");

    std::vector<std::vector<int>> raw_adj(nv);
    for (auto [u, v] : edges_) {
        if (u < 0 || u >= nv || v < 0 || v >= nv || u == v)
            throw ValidationError("bad edge endpoints");
        raw_adj[u].push_back(v);
        raw_adj[v].push_back(u);
    }

    for (int v = 0; v < nv; ++v) {
        const int deg = static_cast<int>(raw_adj[v].size());
        if (t.vertex_taxon_[v] >= 0) {
            if (nv > 1 && deg != 1)
                throw ValidationError("leaf '" + vertex_label_[v] + "' has degree " +
                                      std::to_string(deg));
        } else if (deg != 3) {
            throw ValidationError("internal vertex has degree " + std::to_string(deg) +
                                  " (tree is not binary)");
        }
    }

    // Connectivity: with |E| = |V| - 1 already checked, one sweep suffices.
    std::vector<char> seen(nv, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int reached = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++reached;
        for (int u : raw_adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    if (reached != nv) throw ValidationError("tree is not connected");

    // Canonical edge ids: DFS from the smallest leaf, children ordered by the
    // smallest taxon in their subtree.
    t.edges_.clear();
    t.adj_.assign(nv, {});
    if (nv > 1) {
        const int root = t.leaf_vertex_[0];
        std::vector<int> min_taxon(nv, n);
        std::vector<int> parent(nv, -1);
        std::vector<int> order;
        order.reserve(nv);
        stack = {root};
        std::vector<char> visited(nv, 0);
        visited[root] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int u : raw_adj[v])
                if (!visited[u]) {
                    visited[u] = 1;
                    parent[u] = v;
                    stack.push_back(u);
                }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int v = *it;
            if (t.vertex_taxon_[v] >= 0) min_taxon[v] = std::min(min_taxon[v], t.vertex_taxon_[v]);
            if (parent[v] >= 0) min_taxon[parent[v]] = std::min(min_taxon[parent[v]], min_taxon[v]);
        }

        // Pre-order ids: a child edge is numbered when the child is popped,
        // children pushed in reverse so the smallest subtree comes first.
        std::vector<std::pair<int, int>> stk;
        stk.emplace_back(root, -1);
        while (!stk.empty()) {
            auto [v, par] = stk.back();
            stk.pop_back();
            if (par >= 0) t.edges_.emplace_back(par, v);
            std::vector<int> children;
            for (int u : raw_adj[v])
                if (u != par) children.push_back(u);
            std::sort(children.begin(), children.end(),
                      [&](int a, int b) { return min_taxon[a] > min_taxon[b]; });
            for (int u : children) stk.emplace_back(u, v);
        }
        for (int e = 0; e < static_cast<int>(t.edges_.size()); ++e) {
            auto [u, v] = t.edges_[e];
            t.adj_[u].emplace_back(v, e);
            t.adj_[v].emplace_back(u, e);
        }
        for (auto& nb : t.adj_)
            std::sort(nb.begin(), nb.end(),
                      [](auto a, auto b) { return a.second < b.second; });
    }
    return t;
}

std::vector<int> spanning_path_edges(const PhyloTree& tree, int taxon_a, int taxon_b) {
    const int n = tree.num_taxa();
    if (taxon_a < 0 || taxon_a >= n || taxon_b < 0 || taxon_b >= n)
        throw ValidationError("taxon id out of range");
    if (taxon_a == taxon_b) throw ValidationError("spanning path needs two distinct taxa");

    const int src = tree.leaf_vertex(taxon_a);
    const int dst = tree.leaf_vertex(taxon_b);
    std::vector<int> par_edge(tree.num_vertices(), -1);
    std::vector<int> par_vertex(tree.num_vertices(), -1);
    std::vector<int> stack = {src};
    std::vector<char> seen(tree.num_vertices(), 0);
    seen[src] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == dst) break;
        for (auto [u, e] : tree.neighbors(v))
            if (!seen[u]) {
                seen[u] = 1;
                par_edge[u] = e;
                par_vertex[u] = v;
                stack.push_back(u);
            }
    }
    std::vector<int> path;
    for (int v = dst; v != src; v = par_vertex[v]) path.push_back(par_edge[v]);
    std::sort(path.begin(), path.end());
    return path;
}

bool is_isomorphic(const PhyloTree& a, const PhyloTree& b) {
    if (!a.same_taxa(b)) throw ValidationError("isomorphism check requires equal taxon sets");
    return write_newick(a) == write_newick(b);
}

RootedView rooted_view(const PhyloTree& tree, int root_taxon) {
    if (root_taxon < 0 || root_taxon >= tree.num_taxa())
        throw ValidationError("root taxon out of range");
    RootedView rv;
    rv.tree = &tree;
    rv.root_taxon = root_taxon;
    rv.root_vertex = tree.leaf_vertex(root_taxon);
    const int nv = tree.num_vertices();
    rv.parent_vertex.assign(nv, -1);
    rv.parent_edge.assign(nv, -1);
    rv.depth.assign(nv, 0);
    rv.edge_child.assign(tree.num_edges(), -1);
    rv.child_edges.assign(nv, {});
    rv.postorder_edges.reserve(tree.num_edges());

    // Iterative DFS; second visit emits the parent edge, giving post-order.
    std::vector<std::pair<int, bool>> stack;
    stack.emplace_back(rv.root_vertex, false);
    std::vector<char> seen(nv, 0);
    seen[rv.root_vertex] = 1;
    while (!stack.empty()) {
        auto [v, processed] = stack.back();
        stack.pop_back();
        if (processed) {
            if (rv.parent_edge[v] >= 0) rv.postorder_edges.push_back(rv.parent_edge[v]);
            continue;
        }
        stack.emplace_back(v, true);
        const auto& nb = tree.neighbors(v);
        for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
            auto [u, e] = *it;
            if (seen[u]) continue;
            seen[u] = 1;
            rv.parent_vertex[u] = v;
            rv.parent_edge[u] = e;
            rv.depth[u] = rv.depth[v] + 1;
            rv.edge_child[e] = u;
            rv.child_edges[v].push_back(e);
            stack.emplace_back(u, false);
        }
        std::sort(rv.child_edges[v].begin(), rv.child_edges[v].end());
    }
    return rv;
}

PhyloTree restrict_to(const PhyloTree& tree, std::span<const int> taxa) {
    if (taxa.empty()) throw ValidationError("restriction to empty taxon set");
    const int nv = tree.num_vertices();
    std::vector<char> keep(nv, 0);
    for (int x : taxa) {
        if (x < 0 || x >= tree.num_taxa())
            throw ValidationError("restriction taxon out of range: " + std::to_string(x));
        if (keep[tree.leaf_vertex(x)])
            throw ValidationError("duplicate taxon in restriction set");
        keep[tree.leaf_vertex(x)] = 1;
    }

    // Peel degree-<=1 vertices that are not kept leaves: what remains is the
    // minimal spanning subtree.
    std::vector<int> deg(nv, 0);
    for (int v = 0; v < nv; ++v) deg[v] = static_cast<int>(tree.neighbors(v).size());
    std::vector<char> removed(nv, 0);
    std::vector<int> stack;
    for (int v = 0; v < nv; ++v)
        if (deg[v] <= 1 && !keep[v]) stack.push_back(v);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (removed[v]) continue;
        removed[v] = 1;
        for (auto [u, e] : tree.neighbors(v)) {
            if (removed[u]) continue;
            if (--deg[u] <= 1 && !keep[u]) stack.push_back(u);
        }
    }

    // Remaining adjacency, then suppress degree-2 vertices.
    std::vector<std::vector<int>> adj(nv);
    for (int e = 0; e < tree.num_edges(); ++e) {
        auto [u, v] = tree.edge(e);
        if (!removed[u] && !removed[v]) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    }
    auto drop = [&](int v, int x) {
        auto& a = adj[v];
        a.erase(std::find(a.begin(), a.end(), x));
    };
    for (int v = 0; v < nv; ++v) {
        if (removed[v] || keep[v]) continue;
        if (adj[v].size() == 2) {
            int a = adj[v][0], b = adj[v][1];
            drop(a, v);
            drop(b, v);
            adj[v].clear();
            adj[a].push_back(b);
            adj[b].push_back(a);
            removed[v] = 1;
        }
    }

    TreeBuilder builder;
    std::vector<int> new_id(nv, -1);
    for (int v = 0; v < nv; ++v) {
        if (removed[v]) continue;
        new_id[v] = keep[v] ? builder.add_leaf(tree.label(tree.vertex_taxon(v)))
                            : builder.add_internal();
    }
    for (int v = 0; v < nv; ++v) {
        if (removed[v]) continue;
        for (int u : adj[v])
            if (v < u) builder.add_edge(new_id[v], new_id[u]);
    }
    return builder.build();
}

} // namespace maf
