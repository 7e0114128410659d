#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "quiverpoly/quiver.hpp"

namespace quiverpoly {

/// Spanning tree T plus the d = |Q1| - |Q0| + 1 fundamental circulations.
/// circulations[i] is the primitive cycle of non_tree_arrows[i], oriented so
/// its own entry is +1; entries are in {-1, 0, 1}.
struct CycleBasis {
    std::vector<int> tree_arrows;      // ascending arrow indices
    std::vector<int> non_tree_arrows;  // ascending arrow indices, b_1..b_d
    std::vector<Circulation> circulations;

    int dimension() const { return static_cast<int>(non_tree_arrows.size()); }
};

namespace detail {

class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int v) {
        while (parent_[static_cast<std::size_t>(v)] != v) {
            parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
            v = parent_[static_cast<std::size_t>(v)];
        }
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[static_cast<std::size_t>(a)] = b;
        return true;
    }

  private:
    std::vector<int> parent_;
};

}  // namespace detail

/// Fundamental cycle basis of the circulation lattice. The tree grows
/// lowest-arrow-index-first; a nonzero seed instead grows along a seeded
/// permutation of the arrow order (same polytope, different lattice basis).
inline CycleBasis cycle_basis(const Quiver& q, std::optional<std::uint64_t> tree_seed = {}) {
    if (!validate(q).connected) {
        throw StructureError("cycle_basis: quiver is disconnected");
    }
    const int n = q.vertex_count();
    const int m = q.arrow_count();

    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    if (tree_seed && *tree_seed != 0) {
        std::mt19937_64 rng(*tree_seed);
        for (int i = m - 1; i > 0; --i) {
            int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
            std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
        }
    }

    detail::UnionFind components(n);
    std::vector<char> in_tree(static_cast<std::size_t>(m), 0);
    for (int idx : order) {
        const Arrow& a = q.arrow(idx);
        if (a.tail != a.head && components.unite(a.tail, a.head)) {
            in_tree[static_cast<std::size_t>(idx)] = 1;
        }
    }

    CycleBasis basis;
    for (int i = 0; i < m; ++i) {
        (in_tree[static_cast<std::size_t>(i)] ? basis.tree_arrows : basis.non_tree_arrows).push_back(i);
    }

    // Tree adjacency: vertex -> (neighbor, arrow index).
    std::vector<std::vector<std::pair<int, int>>> tree_adj(static_cast<std::size_t>(n));
    for (int idx : basis.tree_arrows) {
        const Arrow& a = q.arrow(idx);
        tree_adj[static_cast<std::size_t>(a.tail)].push_back({a.head, idx});
        tree_adj[static_cast<std::size_t>(a.head)].push_back({a.tail, idx});
    }

    for (int b : basis.non_tree_arrows) {
        const Arrow& arrow_b = q.arrow(b);
        Circulation f;
        f.values.assign(static_cast<std::size_t>(m), 0);
        f.values[static_cast<std::size_t>(b)] = 1;

        // Tree path from head(b) back to tail(b); combined with b itself this
        // is the primitive cycle, traversed in the direction that crosses b
        // forward.
        std::vector<int> parent_vertex(static_cast<std::size_t>(n), -1);
        std::vector<int> parent_arrow(static_cast<std::size_t>(n), -1);
        std::vector<int> queue{arrow_b.head};
        parent_vertex[static_cast<std::size_t>(arrow_b.head)] = arrow_b.head;
        for (std::size_t qi = 0; qi < queue.size() && parent_vertex[static_cast<std::size_t>(arrow_b.tail)] < 0; ++qi) {
            int v = queue[qi];
            for (auto [w, idx] : tree_adj[static_cast<std::size_t>(v)]) {
                if (parent_vertex[static_cast<std::size_t>(w)] < 0) {
                    parent_vertex[static_cast<std::size_t>(w)] = v;
                    parent_arrow[static_cast<std::size_t>(w)] = idx;
                    queue.push_back(w);
                }
            }
        }

        // Parents point toward head(b), so the cycle traverses each tree
        // edge from parent to child on its way back to tail(b).
        int v = arrow_b.tail;
        while (v != arrow_b.head) {
            int p = parent_vertex[static_cast<std::size_t>(v)];
            int idx = parent_arrow[static_cast<std::size_t>(v)];
            const Arrow& a = q.arrow(idx);
            // Cycle traverses this tree edge from p to v.
            f.values[static_cast<std::size_t>(idx)] = (a.tail == p && a.head == v) ? 1 : -1;
            v = p;
        }
        basis.circulations.push_back(std::move(f));
    }

    return basis;
}

}  // namespace quiverpoly
