#include "maf/quartets.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "maf/errors.hpp"

namespace maf {

namespace {

// Leaf-to-leaf edge-count distances; O(1) pairing test per quartet afterwards.
class LeafDistances {
public:
    explicit LeafDistances(const PhyloTree& tree) : n_(tree.num_taxa()), d_(n_ * n_, 0) {
        std::vector<int> dist(tree.num_vertices());
        std::vector<int> stack;
        for (int x = 0; x < n_; ++x) {
            std::fill(dist.begin(), dist.end(), -1);
            int src = tree.leaf_vertex(x);
            dist[src] = 0;
            stack.assign(1, src);
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (auto [u, e] : tree.neighbors(v))
                    if (dist[u] < 0) {
                        dist[u] = dist[v] + 1;
                        stack.push_back(u);
                    }
            }
            for (int y = 0; y < n_; ++y) d_[x * n_ + y] = dist[tree.leaf_vertex(y)];
        }
    }

    int operator()(int a, int b) const { return d_[a * n_ + b]; }

    // Pairing of the sorted quartet by the four-point condition: the side
    // sums are s, t, t with s strictly smallest; s identifies the split.
    int partner_of_first(const std::array<int, 4>& q) const {
        int s1 = (*this)(q[0], q[1]) + (*this)(q[2], q[3]);
        int s2 = (*this)(q[0], q[2]) + (*this)(q[1], q[3]);
        int s3 = (*this)(q[0], q[3]) + (*this)(q[1], q[2]);
        if (s1 < s2 && s1 < s3) return 1;
        if (s2 < s1 && s2 < s3) return 2;
        if (s3 < s1 && s3 < s2) return 3;
        throw InternalError("no strict four-point minimum; tree is not binary?");
    }

private:
    int n_;
    std::vector<int> d_;
};

void require_instance(const std::vector<PhyloTree>& trees) {
    if (trees.size() < 2)
        throw ValidationError("need at least 2 trees, got " + std::to_string(trees.size()));
    for (size_t i = 1; i < trees.size(); ++i)
        if (!trees[i].same_taxa(trees[0]))
            throw ValidationError("tree " + std::to_string(i + 1) +
                                  " has a different taxon set than tree 1");
}

// Sorted edge list of every leaf-to-leaf path of one tree, so the hot loop
// never walks the tree.
class PathTable {
public:
    explicit PathTable(const PhyloTree& tree) : n_(tree.num_taxa()), paths_(n_ * n_) {
        std::vector<int> par_edge(tree.num_vertices()), par_vertex(tree.num_vertices());
        std::vector<int> order;
        for (int a = 0; a < n_; ++a) {
            const int src = tree.leaf_vertex(a);
            par_vertex.assign(tree.num_vertices(), -2);
            par_vertex[src] = -1;
            order.assign(1, src);
            for (size_t i = 0; i < order.size(); ++i) {
                int v = order[i];
                for (auto [u, e] : tree.neighbors(v))
                    if (par_vertex[u] == -2) {
                        par_vertex[u] = v;
                        par_edge[u] = e;
                        order.push_back(u);
                    }
            }
            for (int b = a + 1; b < n_; ++b) {
                std::vector<int>& path = paths_[a * n_ + b];
                for (int v = tree.leaf_vertex(b); v != src; v = par_vertex[v])
                    path.push_back(par_edge[v]);
                std::sort(path.begin(), path.end());
            }
        }
    }

    const std::vector<int>& path(int a, int b) const {
        return a < b ? paths_[a * n_ + b] : paths_[b * n_ + a];
    }

private:
    int n_;
    std::vector<std::vector<int>> paths_;
};

unsigned long long choose4(int n) {
    if (n < 4) return 0;
    return static_cast<unsigned long long>(n) * (n - 1) * (n - 2) * (n - 3) / 24;
}

// Sorted quadruple with the given lexicographic rank.
std::array<int, 4> unrank_quartet(unsigned long long rank, int n) {
    std::array<int, 4> q{};
    int lo = 0;
    for (int slot = 0; slot < 4; ++slot) {
        for (int v = lo;; ++v) {
            int rest = 3 - slot;
            unsigned long long block;
            int avail = n - v - 1;
            if (rest == 0) block = 1;
            else if (rest == 1) block = avail;
            else if (rest == 2) block = static_cast<unsigned long long>(avail) * (avail - 1) / 2;
            else block = static_cast<unsigned long long>(avail) * (avail - 1) * (avail - 2) / 6;
            if (rank < block) {
                q[slot] = v;
                lo = v + 1;
                break;
            }
            rank -= block;
        }
    }
    return q;
}

bool next_quartet(std::array<int, 4>& q, int n) {
    for (int i = 3; i >= 0; --i) {
        if (q[i] < n - (4 - i)) {
            ++q[i];
            for (int j = i + 1; j < 4; ++j) q[j] = q[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> lq_edge_set(const PhyloTree& t1, const QuartetTopology& topo) {
    auto [side1, side2] = topo.sides();
    std::vector<int> edges = spanning_path_edges(t1, side1.first, side1.second);
    std::vector<int> other = spanning_path_edges(t1, side2.first, side2.second);
    edges.insert(edges.end(), other.begin(), other.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::vector<QuartetConstraint> dedup_by_lq(std::vector<QuartetConstraint> raw) {
    // Hash first, compare edge sets only on hash collisions.  Distinct
    // quartets always produce distinct L(Q) sets (the four pendant edges
    // identify the quartet), so nothing is expected to drop here.
    std::unordered_map<uint64_t, std::vector<size_t>> seen;
    std::vector<QuartetConstraint> out;
    out.reserve(raw.size());
    for (auto& c : raw) {
        uint64_t h = 0xcbf29ce484222325ULL;
        for (int e : c.lq_edges) {
            h ^= static_cast<uint64_t>(e) + 0x9e3779b97f4a7c15ULL;
            h *= 0x100000001b3ULL;
        }
        auto& bucket = seen[h];
        bool dup = false;
        for (size_t idx : bucket)
            if (out[idx].lq_edges == c.lq_edges) {
                dup = true;
                break;
            }
        if (!dup) {
            bucket.push_back(out.size());
            out.push_back(std::move(c));
        }
    }
    return out;
}

} // namespace

std::pair<std::pair<int, int>, std::pair<int, int>> QuartetTopology::sides() const {
    std::pair<int, int> first{taxa[0], taxa[partner_of_first]};
    std::array<int, 2> rest{};
    int r = 0;
    for (int i = 1; i < 4; ++i)
        if (i != partner_of_first) rest[r++] = taxa[i];
    return {first, {rest[0], rest[1]}};
}

QuartetTopology quartet_topology(const PhyloTree& tree, std::array<int, 4> quartet) {
    std::sort(quartet.begin(), quartet.end());
    for (int i = 0; i < 4; ++i) {
        if (quartet[i] < 0 || quartet[i] >= tree.num_taxa())
            throw ValidationError("quartet taxon out of range");
        if (i > 0 && quartet[i] == quartet[i - 1])
            throw ValidationError("quartet taxa are not distinct");
    }
    // Distances between just these four leaves.
    auto dist = [&](int xa, int xb) {
        return static_cast<int>(spanning_path_edges(tree, xa, xb).size());
    };
    int s1 = dist(quartet[0], quartet[1]) + dist(quartet[2], quartet[3]);
    int s2 = dist(quartet[0], quartet[2]) + dist(quartet[1], quartet[3]);
    int s3 = dist(quartet[0], quartet[3]) + dist(quartet[1], quartet[2]);
    QuartetTopology topo;
    topo.taxa = quartet;
    if (s1 < s2 && s1 < s3) topo.partner_of_first = 1;
    else if (s2 < s1 && s2 < s3) topo.partner_of_first = 2;
    else if (s3 < s1 && s3 < s2) topo.partner_of_first = 3;
    else throw InternalError("no strict four-point minimum; tree is not binary?");
    return topo;
}

std::vector<QuartetConstraint> incompatible_quartets(const std::vector<PhyloTree>& trees) {
    require_instance(trees);
    const PhyloTree& t1 = trees[0];
    const int n = t1.num_taxa();
    const unsigned long long total = choose4(n);
    if (total == 0) return {};

    std::vector<LeafDistances> dist;
    dist.reserve(trees.size());
    for (const auto& t : trees) dist.emplace_back(t);
    const PathTable paths(t1);

    const unsigned long long per_chunk = 8192;
    const int num_chunks = static_cast<int>((total + per_chunk - 1) / per_chunk);
    std::vector<std::vector<QuartetConstraint>> found(num_chunks);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int chunk = 0; chunk < num_chunks; ++chunk) {
        unsigned long long lo = static_cast<unsigned long long>(chunk) * per_chunk;
        unsigned long long hi = std::min(total, lo + per_chunk);
        std::array<int, 4> q = unrank_quartet(lo, n);
        auto& out = found[chunk];
        for (unsigned long long r = lo; r < hi; ++r) {
            int split1 = dist[0].partner_of_first(q);
            for (size_t i = 1; i < trees.size(); ++i) {
                if (dist[i].partner_of_first(q) != split1) {
                    QuartetConstraint c;
                    c.quartet = q;
                    c.witness_tree = static_cast<int>(i) + 1;
                    // The two paths of the pairing are edge-disjoint, so a
                    // plain merge of the precomputed sorted lists is L(Q).
                    auto [s1, s2] = QuartetTopology{q, split1}.sides();
                    const auto& p1 = paths.path(s1.first, s1.second);
                    const auto& p2 = paths.path(s2.first, s2.second);
                    c.lq_edges.resize(p1.size() + p2.size());
                    std::merge(p1.begin(), p1.end(), p2.begin(), p2.end(),
                               c.lq_edges.begin());
                    out.push_back(std::move(c));
                    break;
                }
            }
            if (r + 1 < hi) next_quartet(q, n);
        }
    }

    std::vector<QuartetConstraint> raw;
    for (auto& chunk : found)
        for (auto& c : chunk) raw.push_back(std::move(c));
    return dedup_by_lq(std::move(raw));
}

std::vector<QuartetConstraint> incompatible_quartets_reference(
    const std::vector<PhyloTree>& trees) {
    require_instance(trees);
    const PhyloTree& t1 = trees[0];
    const int n = t1.num_taxa();
    std::vector<QuartetConstraint> raw;
    if (n < 4) return raw;

    std::array<int, 4> q{0, 1, 2, 3};
    do {
        PhyloTree r1 = restrict_to(t1, q);
        for (size_t i = 1; i < trees.size(); ++i) {
            PhyloTree ri = restrict_to(trees[i], q);
            if (is_isomorphic(r1, ri)) continue;
            // Read the pairing off the restricted tree: local taxon ids
            // follow the sorted labels, i.e. the sorted quartet.
            int partner = 1;
            for (int j = 1; j < 4; ++j) {
                if (r1.neighbors(r1.leaf_vertex(0))[0].first ==
                    r1.neighbors(r1.leaf_vertex(j))[0].first) {
                    partner = j;
                    break;
                }
            }
            QuartetConstraint c;
            c.quartet = q;
            c.witness_tree = static_cast<int>(i) + 1;
            c.lq_edges = lq_edge_set(t1, QuartetTopology{q, partner});
            raw.push_back(std::move(c));
            break;
        }
    } while (next_quartet(q, n));
    return dedup_by_lq(std::move(raw));
}

std::string format_constraint(const QuartetConstraint& c, const PhyloTree& t1) {
    std::string out = "Q=(";
    for (int i = 0; i < 4; ++i) {
        if (i) out += ",";
        out += t1.label(c.quartet[i]);
    }
    out += ") witness=" + std::to_string(c.witness_tree) + " L(Q)=[";
    for (size_t i = 0; i < c.lq_edges.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(c.lq_edges[i]);
    }
    out += "]";
    return out;
}

void dump_constraints(const std::vector<QuartetConstraint>& cs, const PhyloTree& t1,
                      std::ostream& out) {
    for (const auto& c : cs) out << format_constraint(c, t1) << "\n";
}

} // namespace maf
