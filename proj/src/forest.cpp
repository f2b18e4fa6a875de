#include "maf/forest.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "maf/errors.hpp"

namespace maf {

namespace {

int uf_find(std::vector<int>& parent, int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
}

void require_common_taxa(const std::vector<PhyloTree>& trees) {
    if (trees.empty()) throw ValidationError("no trees given");
    for (size_t i = 1; i < trees.size(); ++i)
        if (!trees[i].same_taxa(trees[0]))
            throw ValidationError("tree " + std::to_string(i + 1) +
                                  " has a different taxon set than tree 1");
}

void validate_partition(const AgreementForest& f, int n) {
    std::vector<char> seen(n, 0);
    int covered = 0;
    for (const auto& block : f.components) {
        if (block.empty()) throw ValidationError("partition has an empty block");
        for (int x : block) {
            if (x < 0 || x >= n) throw ValidationError("partition references an unknown taxon");
            if (seen[x]) throw ValidationError("partition repeats taxon " + std::to_string(x));
            seen[x] = 1;
            ++covered;
        }
    }
    if (covered != n) throw ValidationError("partition does not cover the taxon set");
}

AgreementForest canonicalize(std::vector<std::vector<int>> blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    AgreementForest f;
    f.components = std::move(blocks);
    return f;
}

// Edges of the minimal subtree of `tree` spanning `block`, marked into
// `use_count`/`first_user`; returns the overlapping edge or -1.
int mark_spanning_edges(const PhyloTree& tree, const RootedView& rv,
                        const std::vector<int>& block, int block_id,
                        std::vector<int>& use_count, std::vector<int>& first_user,
                        std::vector<int>& leaf_cnt) {
    std::fill(leaf_cnt.begin(), leaf_cnt.end(), 0);
    for (int x : block) leaf_cnt[tree.leaf_vertex(x)] = 1;
    const int size = static_cast<int>(block.size());
    for (int e : rv.postorder_edges) {
        int child = rv.edge_child[e];
        int below = leaf_cnt[child];
        if (below > 0 && below < size) {
            if (++use_count[e] >= 2) return e;
            first_user[e] = block_id;
        }
        leaf_cnt[rv.parent_vertex[child]] += below;
    }
    return -1;
}

} // namespace

AgreementForest partition_from_cut(const PhyloTree& t1, std::span<const int> cut) {
    std::vector<char> in_cut(t1.num_edges(), 0);
    for (int e : cut) {
        if (e < 0 || e >= t1.num_edges())
            throw ValidationError("cut edge out of range: " + std::to_string(e));
        in_cut[e] = 1;
    }
    std::vector<int> parent(t1.num_vertices());
    for (int v = 0; v < t1.num_vertices(); ++v) parent[v] = v;
    for (int e = 0; e < t1.num_edges(); ++e) {
        if (in_cut[e]) continue;
        auto [u, v] = t1.edge(e);
        parent[uf_find(parent, u)] = uf_find(parent, v);
    }
    std::vector<std::vector<int>> by_root(t1.num_vertices());
    for (int x = 0; x < t1.num_taxa(); ++x)
        by_root[uf_find(parent, t1.leaf_vertex(x))].push_back(x);
    std::vector<std::vector<int>> blocks;
    for (auto& b : by_root)
        if (!b.empty()) blocks.push_back(std::move(b));
    return canonicalize(std::move(blocks));
}

AfVerdict verify_af(const std::vector<PhyloTree>& trees, const AgreementForest& forest) {
    require_common_taxa(trees);
    const int n = trees[0].num_taxa();
    validate_partition(forest, n);

    AfVerdict verdict;

    // Condition (1): restrictions of each component agree across trees.
    for (int h = 0; h < forest.k(); ++h) {
        const auto& block = forest.components[h];
        PhyloTree r1 = restrict_to(trees[0], block);
        for (size_t i = 1; i < trees.size(); ++i) {
            PhyloTree ri = restrict_to(trees[i], block);
            if (!is_isomorphic(r1, ri)) {
                verdict.accepted = false;
                verdict.witness_tree = 1;
                verdict.witness_tree2 = static_cast<int>(i) + 1;
                verdict.witness_component = h;
                verdict.reason = "component " + std::to_string(h) +
                                 " restricts to different trees in tree 1 and tree " +
                                 std::to_string(i + 1);
                return verdict;
            }
        }
    }

    // Condition (2): per tree, minimal subtrees of distinct components must
    // not share an edge.
    for (size_t i = 0; i < trees.size(); ++i) {
        const PhyloTree& tree = trees[i];
        if (tree.num_edges() == 0) continue;
        RootedView rv = rooted_view(tree, 0);
        std::vector<int> use_count(tree.num_edges(), 0);
        std::vector<int> first_user(tree.num_edges(), -1);
        std::vector<int> leaf_cnt(tree.num_vertices(), 0);
        for (int h = 0; h < forest.k(); ++h) {
            int shared = mark_spanning_edges(tree, rv, forest.components[h], h, use_count,
                                             first_user, leaf_cnt);
            if (shared >= 0) {
                verdict.accepted = false;
                verdict.witness_tree = static_cast<int>(i) + 1;
                verdict.witness_component = first_user[shared];
                verdict.witness_component2 = h;
                verdict.witness_edge = shared;
                verdict.reason = "components " + std::to_string(first_user[shared]) + " and " +
                                 std::to_string(h) + " overlap in tree " + std::to_string(i + 1) +
                                 " (shared edge " + std::to_string(shared) + ")";
                return verdict;
            }
        }
    }

    verdict.accepted = true;
    return verdict;
}

EquivalenceReport verify_cut_feasibility_equivalence(const std::vector<PhyloTree>& trees,
                                                     std::span<const int> cut,
                                                     const LpModel& model) {
    EquivalenceReport rep;
    rep.cut_feasible = cut_satisfies_all(model, cut);
    rep.af_accepted = verify_af(trees, partition_from_cut(trees[0], cut)).accepted;
    if (rep.cut_feasible != rep.af_accepted)
        throw InternalError("cut feasibility and forest verification disagree");
    return rep;
}

EquivalenceReport verify_cut_feasibility_equivalence(const std::vector<PhyloTree>& trees,
                                                     std::span<const int> cut) {
    return verify_cut_feasibility_equivalence(trees, cut, build_model(trees));
}

namespace {

unsigned long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned long long>(n - k + i) / i;
    return r;
}

std::vector<int> unrank_subset(unsigned long long rank, int n, int k) {
    std::vector<int> out(k);
    int lo = 0;
    for (int slot = 0; slot < k; ++slot) {
        for (int v = lo;; ++v) {
            unsigned long long block = binom(n - v - 1, k - slot - 1);
            if (rank < block) {
                out[slot] = v;
                lo = v + 1;
                break;
            }
            rank -= block;
        }
    }
    return out;
}

bool next_subset(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - (k - i)) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

MafResult finish_maf(const std::vector<PhyloTree>& trees, std::vector<int> cut) {
    MafResult res;
    res.forest = partition_from_cut(trees[0], cut);
    res.cut = std::move(cut);
    if (static_cast<int>(res.cut.size()) != res.forest.k() - 1)
        throw InternalError("minimal cut size does not equal k - 1");
    return res;
}

void check_oracle_guard(const PhyloTree& t1) {
    if (t1.num_edges() > 20)
        throw ValidationError("brute-force oracle guard: tree has " +
                              std::to_string(t1.num_edges()) + " edges (limit 20)");
}

} // namespace

MafResult brute_force_maf_serial(const std::vector<PhyloTree>& trees) {
    require_common_taxa(trees);
    check_oracle_guard(trees[0]);
    const int m = trees[0].num_edges();
    for (int s = 0; s <= m; ++s) {
        std::vector<int> idx(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            if (verify_af(trees, partition_from_cut(trees[0], idx)).accepted)
                return finish_maf(trees, idx);
            if (!next_subset(idx, m)) break;
        }
    }
    throw InternalError("no agreement forest found (all-singletons must verify)");
}

MafResult brute_force_maf(const std::vector<PhyloTree>& trees) {
    require_common_taxa(trees);
    check_oracle_guard(trees[0]);
    const int m = trees[0].num_edges();
    for (int s = 0; s <= m; ++s) {
        const unsigned long long total = binom(m, s);
        const unsigned long long per_chunk = 512;
        const int num_chunks = static_cast<int>((total + per_chunk - 1) / per_chunk);
        std::atomic<unsigned long long> best_rank{~0ULL};

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int chunk = 0; chunk < num_chunks; ++chunk) {
            unsigned long long lo = static_cast<unsigned long long>(chunk) * per_chunk;
            if (lo >= best_rank.load(std::memory_order_relaxed)) continue;
            unsigned long long hi = std::min(total, lo + per_chunk);
            std::vector<int> idx = unrank_subset(lo, m, s);
            for (unsigned long long r = lo; r < hi; ++r) {
                if (r >= best_rank.load(std::memory_order_relaxed)) break;
                if (verify_af(trees, partition_from_cut(trees[0], idx)).accepted) {
                    unsigned long long prev = best_rank.load(std::memory_order_relaxed);
                    while (r < prev &&
                           !best_rank.compare_exchange_weak(prev, r, std::memory_order_relaxed)) {
                    }
                    break;
                }
                if (r + 1 < hi) next_subset(idx, m);
            }
        }

        unsigned long long winner = best_rank.load();
        if (winner != ~0ULL) return finish_maf(trees, unrank_subset(winner, m, s));
    }
    throw InternalError("no agreement forest found (all-singletons must verify)");
}

std::optional<int> tbr_estimate(int k, int t) {
    if (k < 1) throw ValidationError("component count must be positive");
    if (t != 2) return std::nullopt;
    return k - 1;
}

} // namespace maf
