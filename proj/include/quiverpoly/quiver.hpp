#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "quiverpoly/errors.hpp"
#include "quiverpoly/rational.hpp"

namespace quiverpoly {

/// Directed arrow between 0-based vertex ids.
struct Arrow {
    int tail = 0;
    int head = 0;

    friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite directed multigraph. Arrow order is canonical: every arrow-indexed
/// object in the library (circulations, masks, matrix rows, removal sets)
/// refers to positions in this list. Multi-arrows and loops are representable;
/// acyclicity validation rejects loops.
class Quiver {
  public:
    Quiver(int vertex_count, std::vector<Arrow> arrows)
        : vertex_count_(vertex_count), arrows_(std::move(arrows)) {
        if (vertex_count_ <= 0) {
            throw StructureError("quiver needs at least one vertex");
        }
        for (const Arrow& a : arrows_) {
            if (a.tail < 0 || a.tail >= vertex_count_ || a.head < 0 || a.head >= vertex_count_) {
                throw StructureError("arrow endpoint out of range");
            }
        }
    }

    int vertex_count() const { return vertex_count_; }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int i) const { return arrows_[static_cast<std::size_t>(i)]; }

    friend bool operator==(const Quiver&, const Quiver&) = default;

  private:
    int vertex_count_;
    std::vector<Arrow> arrows_;
};

/// Vertex-indexed exact rational vector summing to zero.
class Weight {
  public:
    explicit Weight(std::vector<Rational> values) : values_(std::move(values)) {
        Rational total = 0;
        for (const Rational& v : values_) total += v;
        if (total != 0) {
            throw StructureError("weight entries must sum to zero, got " + to_string(total));
        }
    }

    static Weight zero(int vertex_count) {
        return Weight(std::vector<Rational>(static_cast<std::size_t>(vertex_count), Rational(0)));
    }

    int size() const { return static_cast<int>(values_.size()); }
    const Rational& operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    const std::vector<Rational>& values() const { return values_; }

    bool is_zero() const {
        return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; });
    }

    friend bool operator==(const Weight&, const Weight&) = default;

  private:
    std::vector<Rational> values_;
};

/// Arrow-indexed integer vector conserving flow at every vertex.
struct Circulation {
    std::vector<std::int64_t> values;

    std::int64_t operator[](int i) const { return values[static_cast<std::size_t>(i)]; }

    friend bool operator==(const Circulation&, const Circulation&) = default;
};

/// inflow minus outflow at every vertex; the weight lattice image of `f`.
/// The kernel is exactly the circulation lattice.
inline Weight incidence(const Quiver& q, const std::vector<Rational>& f) {
    if (static_cast<int>(f.size()) != q.arrow_count()) {
        throw DimensionError("incidence: vector has " + std::to_string(f.size()) +
                             " entries for " + std::to_string(q.arrow_count()) + " arrows");
    }
    std::vector<Rational> out(static_cast<std::size_t>(q.vertex_count()), Rational(0));
    for (int i = 0; i < q.arrow_count(); ++i) {
        const Arrow& a = q.arrow(i);
        out[static_cast<std::size_t>(a.head)] += f[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(a.tail)] -= f[static_cast<std::size_t>(i)];
    }
    return Weight(std::move(out));
}

/// indegree - outdegree per vertex; equals incidence of the all-ones vector.
inline Weight canonical_weight(const Quiver& q) {
    std::vector<Rational> out(static_cast<std::size_t>(q.vertex_count()), Rational(0));
    for (const Arrow& a : q.arrows()) {
        out[static_cast<std::size_t>(a.head)] += 1;
        out[static_cast<std::size_t>(a.tail)] -= 1;
    }
    return Weight(std::move(out));
}

/// True iff the values conserve flow at every vertex.
inline bool is_circulation(const Quiver& q, const Circulation& f) {
    if (static_cast<int>(f.values.size()) != q.arrow_count()) return false;
    std::vector<std::int64_t> net(static_cast<std::size_t>(q.vertex_count()), 0);
    for (int i = 0; i < q.arrow_count(); ++i) {
        const Arrow& a = q.arrow(i);
        net[static_cast<std::size_t>(a.head)] += f[i];
        net[static_cast<std::size_t>(a.tail)] -= f[i];
    }
    return std::all_of(net.begin(), net.end(), [](std::int64_t v) { return v == 0; });
}

struct Diagnostics {
    bool connected = false;
    bool acyclic = false;
};

/// Connectivity on the underlying undirected graph, acyclicity on the
/// directed one (a loop is a cycle). Diagnostics, never throws.
inline Diagnostics validate(const Quiver& q) {
    const int n = q.vertex_count();
    std::vector<std::vector<int>> undirected(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> directed(static_cast<std::size_t>(n));
    std::vector<int> indegree(static_cast<std::size_t>(n), 0);
    for (const Arrow& a : q.arrows()) {
        undirected[static_cast<std::size_t>(a.tail)].push_back(a.head);
        undirected[static_cast<std::size_t>(a.head)].push_back(a.tail);
        directed[static_cast<std::size_t>(a.tail)].push_back(a.head);
        ++indegree[static_cast<std::size_t>(a.head)];
    }

    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : undirected[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }

    // Kahn's algorithm: acyclic iff all vertices get removed.
    std::vector<int> queue;
    for (int v = 0; v < n; ++v) {
        if (indegree[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    }
    int removed = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++removed;
        for (int w : directed[static_cast<std::size_t>(v)]) {
            if (--indegree[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
        }
    }

    return Diagnostics{reached == n, removed == n};
}

inline void require_connected_acyclic(const Quiver& q, const char* where) {
    Diagnostics d = validate(q);
    if (!d.connected) throw StructureError(std::string(where) + ": quiver is disconnected");
    if (!d.acyclic) throw StructureError(std::string(where) + ": quiver has a directed cycle");
}

/// Complete bipartite quiver on p left and q right vertices, all arrows
/// left-to-right in row-major order. Coprimality of (p, q) is checked
/// downstream, not here.
inline Quiver generate_bipartite(int p, int q) {
    if (p < 1 || q < 1) throw StructureError("bipartite parts must be positive");
    std::vector<Arrow> arrows;
    arrows.reserve(static_cast<std::size_t>(p) * static_cast<std::size_t>(q));
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < q; ++j) {
            arrows.push_back(Arrow{i, p + j});
        }
    }
    return Quiver(p + q, std::move(arrows));
}

/// Complete multipartite quiver; every edge oriented from the lower-indexed
/// part to the higher-indexed part. Two parts reproduce generate_bipartite.
inline Quiver generate_multipartite(const std::vector<int>& parts) {
    if (parts.size() < 2) throw StructureError("multipartite needs at least two parts");
    for (int p : parts) {
        if (p < 1) throw StructureError("multipartite parts must be positive");
    }
    std::vector<int> offset(parts.size() + 1, 0);
    for (std::size_t i = 0; i < parts.size(); ++i) offset[i + 1] = offset[i] + parts[i];
    std::vector<Arrow> arrows;
    for (std::size_t s = 0; s < parts.size(); ++s) {
        for (std::size_t t = s + 1; t < parts.size(); ++t) {
            for (int i = 0; i < parts[s]; ++i) {
                for (int j = 0; j < parts[t]; ++j) {
                    arrows.push_back(Arrow{offset[s] + i, offset[t] + j});
                }
            }
        }
    }
    return Quiver(offset.back(), std::move(arrows));
}

}  // namespace quiverpoly
