#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maf {

// Unrooted binary phylogenetic tree: internal vertices of degree 3, leaves
// bijectively labelled.  Taxon ids are dense 0..n-1 in lexicographic label
// order, so trees over the same label set agree on ids.  Edge ids are
// canonical: depth-first from the leaf with the smallest label, children
// visited by smallest descendant taxon.  Immutable once built.
class PhyloTree {
public:
    int num_taxa() const { return static_cast<int>(labels_.size()); }
    int num_vertices() const { return static_cast<int>(adj_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int taxon) const { return labels_[taxon]; }
    // -1 when the label is unknown.
    int taxon_id(std::string_view label) const;

    int leaf_vertex(int taxon) const { return leaf_vertex_[taxon]; }
    int vertex_taxon(int v) const { return vertex_taxon_[v]; }
    bool is_leaf(int v) const { return vertex_taxon_[v] >= 0; }

    // Endpoints of edge e; .first is the endpoint nearer the smallest leaf.
    std::pair<int, int> edge(int e) const { return edges_[e]; }
    // (neighbor, edge id) pairs, ascending edge id.
    const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_[v]; }
    // The unique edge incident to a leaf.
    int pendant_edge(int taxon) const;

    bool same_taxa(const PhyloTree& other) const { return labels_ == other.labels_; }

private:
    friend class TreeBuilder;
    PhyloTree() = default;

    std::vector<std::string> labels_;                 // taxon id -> label, sorted
    std::vector<int> leaf_vertex_;                    // taxon id -> vertex
    std::vector<int> vertex_taxon_;                   // vertex -> taxon id or -1
    std::vector<std::pair<int, int>> edges_;          // edge id -> endpoints
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

// Assembles a PhyloTree from raw vertices and edges; build() validates the
// invariants and assigns canonical ids.
class TreeBuilder {
public:
    int add_leaf(std::string label);
    int add_internal();
    void add_edge(int u, int v);
    PhyloTree build();

private:
    std::vector<std::string> vertex_label_;
    std::vector<std::pair<int, int>> edges_;
};

// One tree per non-empty line, '#' lines skipped; all trees must share one
// taxon set.  Branch lengths and internal labels are parsed and discarded.
std::vector<PhyloTree> parse_newick(std::string_view text);
PhyloTree parse_newick_line(std::string_view line, int line_no = 1);

// Canonical serialization: for n >= 3 the tree is written from the internal
// vertex adjacent to the smallest leaf, children ordered by smallest
// descendant label.  Equal trees serialize identically.
std::string write_newick(const PhyloTree& tree);

// T restricted to the taxa in `taxa`: minimal spanning subtree with all
// degree-2 vertices suppressed.  Taxon ids in the result are re-densified
// over the surviving labels.
PhyloTree restrict_to(const PhyloTree& tree, std::span<const int> taxa);

// Edges on the unique path between two leaves, ascending edge ids.
std::vector<int> spanning_path_edges(const PhyloTree& tree, int taxon_a, int taxon_b);

// Label-preserving isomorphism (same taxon set required).
bool is_isomorphic(const PhyloTree& a, const PhyloTree& b);

// Orientation of every edge away from a root leaf: u_e (parent side) is on
// the path from the root to v_e (child side).
struct RootedView {
    const PhyloTree* tree = nullptr;
    int root_taxon = -1;
    int root_vertex = -1;
    std::vector<int> parent_vertex;           // per vertex, -1 at root
    std::vector<int> parent_edge;             // per vertex, -1 at root
    std::vector<int> depth;                   // per vertex
    std::vector<int> edge_child;              // per edge: v_e
    std::vector<std::vector<int>> child_edges; // per vertex, ascending edge id
    std::vector<int> postorder_edges;         // every edge after its descendants
};

RootedView rooted_view(const PhyloTree& tree, int root_taxon);

} // namespace maf
