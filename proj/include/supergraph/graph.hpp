#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace supergraph {

using Edge = std::pair<int, int>;  // stored with first < second

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

inline std::uint64_t edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

// Undirected simple graph on vertices 0..n-1 with sorted adjacency lists.
struct SimpleGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    SimpleGraph() = default;
    explicit SimpleGraph(int n_vertices) : n(n_vertices), adj(n_vertices) {}

    static SimpleGraph from_edges(int n_vertices, const std::vector<Edge>& edges) {
        SimpleGraph g(n_vertices);
        for (const auto& [u, v] : edges) {
            g.adj[u].push_back(v);
            g.adj[v].push_back(u);
        }
        g.sort_adjacency();
        return g;
    }

    void sort_adjacency() {
        for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    }

    bool has_edge(int u, int v) const {
        const auto& nb = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
        const int other = adj[u].size() <= adj[v].size() ? v : u;
        return std::binary_search(nb.begin(), nb.end(), other);
    }

    long long edge_count() const {
        long long deg_sum = 0;
        for (const auto& nb : adj) deg_sum += static_cast<long long>(nb.size());
        return deg_sum / 2;
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int u = 0; u < n; ++u)
            for (int v : adj[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

}  // namespace supergraph
