#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "quiverpoly/quiver.hpp"

namespace quiverpoly {

namespace detail {

/// Unit-capacity Dinic on the underlying undirected graph. Each undirected
/// edge becomes an arc pair with capacity 1 in both directions, so a parallel
/// edge contributes one unit of cut capacity per copy.
class UnitFlowNetwork {
  public:
    explicit UnitFlowNetwork(int n) : adjacency_(static_cast<std::size_t>(n)) {}

    void add_undirected_edge(int u, int v) {
        adjacency_[static_cast<std::size_t>(u)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({v, 1});
        adjacency_[static_cast<std::size_t>(v)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({u, 1});
    }

    int max_flow(int source, int sink) {
        for (ArcState& a : arcs_) a.residual = 1;
        int flow = 0;
        while (bfs_levels(source, sink)) {
            iter_.assign(adjacency_.size(), 0);
            while (int pushed = dfs_augment(source, sink, std::numeric_limits<int>::max())) {
                flow += pushed;
            }
        }
        return flow;
    }

  private:
    struct ArcState {
        int to;
        int residual;
    };

    bool bfs_levels(int source, int sink) {
        level_.assign(adjacency_.size(), -1);
        level_[static_cast<std::size_t>(source)] = 0;
        std::vector<int> queue{source};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int arc_id : adjacency_[static_cast<std::size_t>(v)]) {
                const ArcState& arc = arcs_[static_cast<std::size_t>(arc_id)];
                if (arc.residual > 0 && level_[static_cast<std::size_t>(arc.to)] < 0) {
                    level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(v)] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        return level_[static_cast<std::size_t>(sink)] >= 0;
    }

    int dfs_augment(int v, int sink, int limit) {
        if (v == sink) return limit;
        for (int& i = iter_[static_cast<std::size_t>(v)];
             i < static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); ++i) {
            int arc_id = adjacency_[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)];
            ArcState& arc = arcs_[static_cast<std::size_t>(arc_id)];
            if (arc.residual <= 0 ||
                level_[static_cast<std::size_t>(arc.to)] != level_[static_cast<std::size_t>(v)] + 1) {
                continue;
            }
            int pushed = dfs_augment(arc.to, sink, std::min(limit, arc.residual));
            if (pushed > 0) {
                arc.residual -= pushed;
                arcs_[static_cast<std::size_t>(arc_id ^ 1)].residual += pushed;
                return pushed;
            }
        }
        return 0;
    }

    std::vector<std::vector<int>> adjacency_;
    std::vector<ArcState> arcs_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

}  // namespace detail

/// Minimum number of undirected edges whose removal disconnects the
/// underlying graph: min over t != 0 of maxflow(0, t) with unit capacities.
/// Returns 0 for a disconnected quiver and for the single-vertex graph.
inline int edge_connectivity(const Quiver& q) {
    if (q.vertex_count() <= 1) return 0;
    if (!validate(q).connected) return 0;

    detail::UnitFlowNetwork network(q.vertex_count());
    for (const Arrow& a : q.arrows()) {
        if (a.tail != a.head) network.add_undirected_edge(a.tail, a.head);
    }
    int best = std::numeric_limits<int>::max();
    for (int t = 1; t < q.vertex_count(); ++t) {
        best = std::min(best, network.max_flow(0, t));
    }
    return best;
}

}  // namespace quiverpoly
