#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace shipplan {

// Minimal weighted digraph for the per-product induced networks. Nodes are
// dense indices assigned by the caller; arc weights must be nonnegative.
struct CostGraph {
    struct Arc {
        int to;
        int64_t cost;
        int tag;  // caller-defined arc id (index into the instance edge list)
    };
    std::vector<std::vector<Arc>> adj;

    explicit CostGraph(int n = 0) : adj(n) {}
    void add_arc(int from, int to, int64_t cost, int tag = -1) {
        adj[size_t(from)].push_back({to, cost, tag});
    }
    int size() const { return int(adj.size()); }
};

struct ShortestPath {
    int64_t cost{-1};           // -1: unreachable
    std::vector<int> arc_tags;  // tags along the optimal path, source to target

    bool reachable() const { return cost >= 0; }
};

// Dijkstra with predecessor recovery. Strict-improvement relaxation over a
// fixed adjacency order keeps the returned path deterministic.
inline ShortestPath dijkstra(const CostGraph& g, int source, int target) {
    constexpr int64_t inf = std::numeric_limits<int64_t>::max();
    std::vector<int64_t> dist(size_t(g.size()), inf);
    std::vector<int> pred_node(size_t(g.size()), -1);
    std::vector<int> pred_tag(size_t(g.size()), -1);

    using Item = std::pair<int64_t, int>;  // (dist, node)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[size_t(source)] = 0;
    pq.push({0, source});

    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[size_t(u)]) continue;
        if (u == target) break;
        for (const auto& arc : g.adj[size_t(u)]) {
            int64_t nd = d + arc.cost;
            if (nd < dist[size_t(arc.to)]) {
                dist[size_t(arc.to)] = nd;
                pred_node[size_t(arc.to)] = u;
                pred_tag[size_t(arc.to)] = arc.tag;
                pq.push({nd, arc.to});
            }
        }
    }

    ShortestPath sp;
    if (dist[size_t(target)] == inf) return sp;
    sp.cost = dist[size_t(target)];
    for (int v = target; v != source; v = pred_node[size_t(v)])
        sp.arc_tags.push_back(pred_tag[size_t(v)]);
    std::reverse(sp.arc_tags.begin(), sp.arc_tags.end());
    return sp;
}

}  // namespace shipplan
